import random

from hypothesis import HealthCheck, given, settings, strategies as st

from realcert.cartan import CartanContext, Subdiagram
from realcert.drinfeld import DrinfeldPoly, Fundamental as F, KRFactor as K, dualize, is_q_factorization, q_factorize
from realcert.graph import Extremality, QFGraph, bits, qf_graph
from realcert.kkop import bound, replay_trace
from realcert.primality import Factors, PrimalityError, three_vertex_primality
from realcert.reality import certify_real, check_chain, refute_hlw_by_restriction
from realcert.redsets import Direction, arrow_between, red_set_restricted

from conftest import FACTORS, graph

RANKS = st.integers(1, 7)


@st.composite
def nested_intervals(draw):
    n = draw(RANKS)
    a = draw(st.integers(1, n))
    b = draw(st.integers(a, n))
    i = draw(st.integers(a, b))
    j = draw(st.integers(a, b))
    lo = draw(st.integers(1, min(i, j)))
    hi = draw(st.integers(max(i, j), n))
    lo2 = draw(st.integers(1, lo))
    hi2 = draw(st.integers(hi, n))
    return n, Subdiagram(lo, hi), Subdiagram(lo2, hi2), i, j


@settings(max_examples=300)
@given(nested_intervals(), st.integers(1, 4), st.integers(1, 4))
def test_restricted_sets_grow(data, r, s):
    n, J, K_, i, j = data
    ctx = CartanContext(n)
    assert set(red_set_restricted(ctx, J, i, j, r, s)) <= set(red_set_restricted(ctx, K_, i, j, r, s))


krs = st.builds(K, st.integers(1, 4), st.integers(-8, 8), st.integers(1, 3))


@given(krs, krs)
def test_arrow_antisymmetry(v, w):
    ctx = CartanContext(4)
    d = arrow_between(ctx, v, w)
    back = arrow_between(ctx, w, v)
    if d is None:
        assert back is None
    else:
        assert {d, back} == {Direction.FORWARD, Direction.BACKWARD}


polys = st.lists(st.builds(F, st.integers(1, 3), st.integers(0, 10)), min_size=1, max_size=7).map(
    lambda ws: DrinfeldPoly(CartanContext(3), tuple(ws)))


@settings(max_examples=150)
@given(polys)
def test_q_factorization_is_valid(pi):
    f = q_factorize(pi)
    assert is_q_factorization(f.factors) and f.poly() == pi


@settings(max_examples=150)
@given(polys)
def test_arrow_dual_involution(pi):
    G = qf_graph(pi)
    D = G.arrow_dual()
    assert D.arrow_dual().signature() == G.signature()
    assert D.poly() == dualize(G.poly(), "kappa_star")
    assert len(D.arrows) == len(G.arrows)


@settings(max_examples=150, suppress_health_check=[HealthCheck.too_slow])
@given(polys)
def test_refuter_silent_on_extremal_subgraphs(pi):
    G = qf_graph(pi)
    for H in range(1, G.full):
        if G.is_extremal(H) is not Extremality.NO:
            assert refute_hlw_by_restriction(G, H) is None


@settings(max_examples=100, suppress_health_check=[HealthCheck.too_slow])
@given(polys)
def test_certificates_replay_and_duality(pi):
    G = qf_graph(pi)
    res = certify_real(G)
    if res.chain is not None:
        assert not check_chain(G, res.chain)
        assert res.index.q_lower == res.chain.length
    assert res.index.q_lower + res.index.r_upper == G.n
    assert certify_real(G.arrow_dual()).status == res.status


@settings(max_examples=200)
@given(st.lists(krs, min_size=3, max_size=3))
def test_three_vertex_factors_multiply_back(fs):
    pi = DrinfeldPoly.from_factors(CartanContext(4), fs)
    G = qf_graph(pi)
    try:
        v = three_vertex_primality(G)
    except PrimalityError:
        return
    if isinstance(v, Factors):
        assert v.factor * v.cofactor == pi
    w = three_vertex_primality(G.arrow_dual())
    assert w.kind == v.kind


def _random_pairs(rng, G, count):
    out = []
    while len(out) < count:
        labels = [rng.randrange(3) for _ in G.vertices]
        H = sum(1 << v for v in G.vertices if labels[v] == 1)
        Kset = sum(1 << v for v in G.vertices if labels[v] == 2)
        if H and Kset:
            out.append((H, Kset))
    return out


def test_kkop_symmetry_and_budget_monotonicity():
    rng = random.Random(7)
    names = sorted(FACTORS)
    checked = 0
    for k in range(200):
        G = graph(names[k % len(names)])
        (H, Kset), = _random_pairs(rng, G, 1)
        a, b = bound(G, H, Kset, budget=2000), bound(G, Kset, H, budget=2000)
        assert a.upper == b.upper
        assert replay_trace(G.ctx, a.trace)
        for small in (3, 200):
            assert a.upper <= bound(G, H, Kset, budget=small).upper
        checked += 1
    assert checked == 200


def test_component_separation_gives_zero():
    G = graph("triangle3-triple")
    for H in range(1, 1 << 3):
        for Kset in range(1, 1 << 3):
            assert bound(G, H, Kset << 6).upper == 0


def test_sources_are_maximal(named_graph):
    _, G = named_graph
    reach = G.reach()
    for v in G.vertices:
        if G.classify_vertex(v).is_source:
            assert not any(reach[u] >> v & 1 for u in G.vertices if u != v)
    assert any(G.classify_vertex(v).is_source for v in G.vertices)


def test_valence_one_vertices_are_sources_or_sinks():
    for name in FACTORS:
        G = graph(name)
        for v in G.vertices:
            info = G.classify_vertex(v)
            if info.valence == 1:
                assert info.is_source or info.is_sink


def test_cut_set_counts_add_up():
    G = graph("no-rds5-pair")
    parts = [[0, 1], [2, 3, 4], [5, 6, 7], [8, 9]]
    total = sum(len(G.arrows_between(parts[a], parts[b])) for a in range(4) for b in range(a + 1, 4))
    assert total == len(G.cut_set(parts))
    assert bits(G.full) == list(G.vertices)
    assert QFGraph(G.ctx, G.factors).signature() == G.signature()
