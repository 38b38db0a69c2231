import pytest

from realcert.cartan import CartanContext, CartanError, Subdiagram
from realcert.drinfeld import KRFactor as K
from realcert.redsets import Direction, arrow_between, red_set, red_set_restricted, sl2_set


@pytest.mark.parametrize("r,s,expected", [(1, 1, (2,)), (3, 3, (2, 4, 6)), (1, 3, (4,))])
def test_sl2_set(r, s, expected):
    assert sl2_set(r, s) == expected


# the six sets for the four-vertex line at rank 6
LINE_TABLE = [
    ((4, 2, 1, 1), (4, 6)),
    ((4, 3, 1, 3), (5, 7, 9)),
    ((4, 2, 1, 3), (6, 8)),
    ((2, 3, 1, 3), (5, 7)),
    ((2, 2, 1, 3), (4, 6)),
    ((2, 3, 3, 3), (3, 5, 7, 9)),
]


@pytest.mark.parametrize("args,expected", LINE_TABLE)
def test_rank6_table(args, expected):
    assert red_set(CartanContext(6), *args) == expected


def test_width_two_three():
    assert red_set(CartanContext(5), 2, 3, 2, 3) == (4, 6, 8)
    assert red_set(CartanContext(4), 2, 3, 2, 3) == (4, 6, 8)


def test_restricted():
    for rank in (3, 4, 6):
        assert red_set_restricted(CartanContext(rank), Subdiagram(1, 3), 1, 2, 3, 2) == (4, 6)
    assert red_set_restricted(CartanContext(3), Subdiagram(1, 2), 1, 2, 1, 1) == (3,)
    ctx = CartanContext(6)
    assert red_set_restricted(ctx, ctx.full(), 2, 5, 2, 1) == red_set(ctx, 2, 5, 2, 1)


def test_restricted_rejects_nodes_outside():
    with pytest.raises(CartanError):
        red_set_restricted(CartanContext(4), Subdiagram(2, 3), 1, 2, 1, 1)


def test_small_rank_shrinks_sets():
    # the boundary term caps the set near the ends of the diagram
    assert red_set(CartanContext(1), 1, 1, 1, 1) == (2,)
    assert red_set(CartanContext(3), 2, 2, 1, 1) == (2, 4)
    assert red_set(CartanContext(5), 3, 3, 1, 1) == (2, 4, 6)


def test_arrows():
    ctx6, ctx3 = CartanContext(6), CartanContext(3)
    assert arrow_between(ctx6, K(2, 4), K(4, 0)) is Direction.FORWARD
    assert arrow_between(ctx6, K(4, 0), K(2, 4)) is Direction.BACKWARD
    assert arrow_between(ctx3, K(2, 6), K(2, 0)) is None
    assert arrow_between(ctx3, K(2, 6), K(2, 6)) is None


def test_symmetries():
    for n in (3, 5, 6):
        ctx = CartanContext(n)
        for i in ctx.nodes:
            for j in ctx.nodes:
                for r in (1, 2, 3):
                    for s in (1, 2):
                        R = red_set(ctx, i, j, r, s)
                        assert R == red_set(ctx, j, i, s, r)
                        assert R == red_set(ctx, n + 1 - i, n + 1 - j, r, s)
                        assert all(x > 0 for x in R)
                        if i == j:
                            assert set(sl2_set(r, s)) <= set(R)


def test_bad_widths():
    with pytest.raises(ValueError):
        sl2_set(0, 1)
