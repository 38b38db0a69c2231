import pytest

from realcert.cartan import CartanContext
from realcert.drinfeld import KRFactor as K
from realcert.graph import QFGraph, qf_graph
from realcert.primality import (
    Factors, Prime, PrimalityError, Unknown, dissociate_factorization, is_prime_snake, line_shape,
    minimal_interval, prime_verdict, three_vertex_primality, totally_ordered_prime,
)

from conftest import graph, poly


def test_prime_snake():
    assert is_prime_snake(poly(6, [K(4, 0), K(2, 4), K(3, 9, 3)]))
    assert not is_prime_snake(graph("no-rds5").poly())
    assert is_prime_snake(poly(2, [K(1, 0, 4)]))
    assert not is_prime_snake(poly(2, []))


def test_dissociate_factorization():
    G = QFGraph(CartanContext(2), [K(1, 0), K(1, 1)])
    assert len(dissociate_factorization(G)) == 2
    assert len(dissociate_factorization(graph("line4"))) == 1
    assert dissociate_factorization(QFGraph(CartanContext(2), [])) == []


def test_three_vertex_splits():
    v = three_vertex_primality(qf_graph(poly(3, [K(2, 4), K(3, 3), K(2, 0)])))
    assert isinstance(v, Factors) and v.factor == poly(3, [K(2, 4)])
    assert v.factor * v.cofactor == poly(3, [K(2, 4), K(3, 3), K(2, 0)])
    pi = poly(4, [K(2, 8, 2), K(1, 2, 3), K(3, 6, 3)])
    v = three_vertex_primality(qf_graph(pi))
    assert isinstance(v, Factors) and v.factor == poly(4, [K(3, 6, 3)])
    assert v.factor * v.cofactor == pi


def test_three_vertex_prime():
    G = qf_graph(poly(3, [K(1, 0), K(2, 3), K(3, 0)]))
    shape = line_shape(G)
    assert shape is not None and shape.middle_is_source
    assert isinstance(three_vertex_primality(G), Prime)


def test_three_vertex_duality():
    for fs, rank in (([K(2, 4), K(3, 3), K(2, 0)], 3), ([K(1, 0), K(2, 3), K(3, 0)], 3),
                     ([K(2, 8, 2), K(1, 2, 3), K(3, 6, 3)], 4)):
        G = qf_graph(poly(rank, fs))
        a, b = three_vertex_primality(G), three_vertex_primality(G.arrow_dual())
        assert a.kind == b.kind
        if isinstance(a, Factors):
            assert a.factor.dualize("kappa_star") == b.factor


def test_three_vertex_preconditions():
    with pytest.raises(PrimalityError):
        three_vertex_primality(graph("line4"))
    with pytest.raises(PrimalityError):
        three_vertex_primality(QFGraph(CartanContext(1), [K(1, 0), K(1, 2), K(1, 10)]))


def test_minimal_interval():
    J = minimal_interval(4, 1, 2, 3, 2, 6)
    assert (J.lo, J.hi) == (1, 2)
    J = minimal_interval(4, 2, 3, 1, 1, 5)
    assert (J.lo, J.hi) == (1, 4)
    assert minimal_interval(4, 1, 2, 3, 2, 8) is None
    assert minimal_interval(2, 1, 2, 1, 1, 9) is None


def test_totally_ordered_prime():
    assert isinstance(totally_ordered_prime(graph("line4")), Prime)
    assert isinstance(totally_ordered_prime(graph("triangle3")), Prime)
    assert isinstance(totally_ordered_prime(graph("no-rds5")), Unknown)
    assert isinstance(totally_ordered_prime(QFGraph(CartanContext(1), [K(1, 0)])), Prime)
    with pytest.raises(PrimalityError):
        totally_ordered_prime(QFGraph(CartanContext(1), [K(1, 0), K(1, 2)]))


def test_prime_verdict():
    assert isinstance(prime_verdict(QFGraph(CartanContext(2), [K(1, 0), K(1, 1)])), Factors)
    assert isinstance(prime_verdict(graph("no-rds5")), Unknown)
    assert isinstance(prime_verdict(qf_graph(poly(3, [K(2, 4), K(3, 3), K(2, 0)]))), Factors)


def test_factors_validation():
    one = poly(2, [])
    with pytest.raises(PrimalityError):
        Factors(one, poly(2, [K(1, 0)]), "x")


def test_prime_snakes_connected_under_pseudo_factorizations():
    pi = poly(6, [K(4, 0), K(2, 4), K(3, 9, 3)])
    fund = [w.as_factor() for w in pi.weights]
    for split in ([K(3, 8, 2), K(3, 11)], [K(3, 7), K(3, 10, 2)], [K(3, 9, 3)]):
        G = QFGraph(pi.ctx, [K(4, 0), K(2, 4)] + split)
        assert G.is_connected()
    assert QFGraph(pi.ctx, fund).is_connected()
