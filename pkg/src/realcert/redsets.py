"""Reducibility sets for type A and the arrow predicate between KR factors.

``red_set(ctx, i, j, r, s)`` is the set of center differences ``|a - b|`` for
which the tensor product of the KR modules ``(i, a, r)`` and ``(j, b, s)`` is
reducible.  Sets are returned as sorted tuples of positive integers.
"""
from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import Optional, Protocol

from .cartan import CartanContext, Subdiagram, boundary_gap


class _KRLike(Protocol):
    node: int
    center: int
    width: int


class Direction(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


def _check_widths(r: int, s: int) -> None:
    if r < 1 or s < 1:
        raise ValueError(f"widths must be positive, got {r}, {s}")


@lru_cache(maxsize=None)
def sl2_set(r: int, s: int) -> tuple[int, ...]:
    _check_widths(r, s)
    return tuple(sorted(r + s - 2 * p for p in range(min(r, s))))


@lru_cache(maxsize=None)
def _typeA(d: int, gap: int, r: int, s: int) -> tuple[int, ...]:
    return tuple(sorted(r + s + d - 2 * p for p in range(-gap, min(r, s))))


def red_set_restricted(ctx: CartanContext, J: Subdiagram, i: int, j: int, r: int, s: int) -> tuple[int, ...]:
    """Reducibility set computed inside the type-A subdiagram ``J``."""
    _check_widths(r, s)
    J.check_within(ctx)
    return _typeA(abs(i - j), boundary_gap(J, i, j), r, s)


def red_set(ctx: CartanContext, i: int, j: int, r: int = 1, s: int = 1) -> tuple[int, ...]:
    ctx.check_node(i)
    ctx.check_node(j)
    return red_set_restricted(ctx, ctx.full(), i, j, r, s)


def arrow_between(ctx: CartanContext, v: _KRLike, w: _KRLike, J: Optional[Subdiagram] = None) -> Optional[Direction]:
    """Orientation of the arrow between two KR factors, if any.

    FORWARD means ``v -> w``: the product is reducible and ``v`` has the larger
    center.  Passing ``J`` evaluates reducibility inside that subdiagram.
    """
    diff = v.center - w.center
    if diff == 0:
        return None
    J = J or ctx.full()
    if abs(diff) not in red_set_restricted(ctx, J, v.node, w.node, v.width, w.width):
        return None
    return Direction.FORWARD if diff > 0 else Direction.BACKWARD


def linked(ctx: CartanContext, v: _KRLike, w: _KRLike) -> bool:
    return arrow_between(ctx, v, w) is not None
