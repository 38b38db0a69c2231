import pytest
from hypothesis import given, strategies as st

from realcert.cartan import CartanContext
from realcert.drinfeld import KRFactor as K, PseudoFactorization
from realcert.cli.polyspec import SpecError, format_poly, format_spec, parse, parse_poly

from conftest import poly


def test_examples():
    f = parse("A3; 2:0 1:3 3:3 2:6x2")
    assert f.factors == (K(2, 0), K(1, 3), K(3, 3), K(2, 6), K(2, 6))
    assert parse("A6; 4:0 2:4 3:9:3 2:14:3").poly() == poly(6, [K(4, 0), K(2, 4), K(3, 9, 3), K(2, 14, 3)])
    empty = parse("A3;")
    assert empty.ctx.rank == 3 and empty.poly().is_one()


def test_canonical_printer():
    assert format_spec(parse("A3; 2:6x2 2:0 3:3 1:3")) == "A3; 1:3 2:0 2:6x2 3:3"
    assert format_spec(parse("A3;")) == "A3;"
    assert format_poly(parse_poly("A2; 1:1:2")) == "A2; 1:0 1:2"
    assert parse_poly("1:0 2:-3", rank=2).ctx.rank == 2


@pytest.mark.parametrize("text,col", [
    ("A3; 2:0 1:x", 9),
    ("A3; 4:0", 5),
    ("B3; 1:0", 1),
    ("A3; 1:0:0", 5),
    ("A3; 1:0x0", 5),
])
def test_errors_carry_positions(text, col):
    with pytest.raises(SpecError) as e:
        parse(text)
    assert e.value.pos == col - 1
    assert f"column {col}" in str(e.value)


def test_zero_rank_rejected():
    with pytest.raises(SpecError):
        parse("A0;")
    with pytest.raises(SpecError):
        parse("1:0")


factors = st.builds(K, st.integers(1, 4), st.integers(-20, 20), st.integers(1, 4))


@given(st.lists(factors, max_size=8))
def test_round_trip(fs):
    f = PseudoFactorization(CartanContext(4), tuple(fs))
    assert parse(format_spec(f)) == f.canonical()
    assert format_spec(parse(format_spec(f))) == format_spec(f)
