"""Type-A Dynkin diagram geometry.

Nodes are the integers ``1..rank``.  Every connected subdiagram of a type-A
diagram is an interval, so :class:`Subdiagram` is just a pair of endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

SUPPORTED_TYPES = ("A",)


class CartanError(ValueError):
    """A node or interval does not fit the diagram."""


@dataclass(frozen=True, order=True)
class CartanContext:
    rank: int
    type_tag: str = "A"

    def __post_init__(self) -> None:
        if not isinstance(self.rank, int) or self.rank < 1:
            raise CartanError(f"rank must be a positive integer, got {self.rank!r}")
        if self.type_tag not in SUPPORTED_TYPES:
            raise CartanError(f"only type A is implemented, got {self.type_tag!r}")

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def symmetrizer(self, i: int) -> int:
        self.check_node(i)
        return 1

    def check_node(self, i: int) -> int:
        if not 1 <= i <= self.rank:
            raise CartanError(f"node {i} outside 1..{self.rank}")
        return i

    def full(self) -> "Subdiagram":
        return Subdiagram(1, self.rank)

    def dual_node(self, i: int) -> int:
        """The node ``i*`` fixed by the longest Weyl group element."""
        self.check_node(i)
        return self.rank + 1 - i

    @property
    def coxeter(self) -> int:
        # dual Coxeter number of A_n
        return self.rank + 1

    def __str__(self) -> str:
        return f"{self.type_tag}{self.rank}"


@dataclass(frozen=True, order=True)
class Subdiagram:
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise CartanError(f"empty interval [{self.lo},{self.hi}]")
        if self.lo < 1:
            raise CartanError(f"interval [{self.lo},{self.hi}] starts below node 1")

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    @property
    def boundary(self) -> frozenset[int]:
        return frozenset((self.lo, self.hi))

    @property
    def coxeter(self) -> int:
        return self.size + 1

    @property
    def nodes(self) -> range:
        return range(self.lo, self.hi + 1)

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and self.lo <= i <= self.hi

    def contains(self, other: "Subdiagram") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def check_within(self, ctx: CartanContext) -> "Subdiagram":
        if self.hi > ctx.rank:
            raise CartanError(f"interval [{self.lo},{self.hi}] exceeds rank {ctx.rank}")
        return self

    def w0(self, i: int) -> int:
        """Image of ``i`` under the longest element of this subdiagram."""
        if i not in self:
            raise CartanError(f"node {i} not in [{self.lo},{self.hi}]")
        return self.lo + self.hi - i

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


NodeSet = Union[Subdiagram, Iterable[int]]


def _node_list(ctx: CartanContext, nodes: NodeSet) -> list[int]:
    if isinstance(nodes, Subdiagram):
        nodes.check_within(ctx)
        return list(nodes.nodes)
    out = [ctx.check_node(i) for i in nodes]
    if not out:
        raise CartanError("empty node set")
    return out


def distance(ctx: CartanContext, i: int, j: int) -> int:
    ctx.check_node(i)
    ctx.check_node(j)
    return abs(i - j)


def set_distance(ctx: CartanContext, J: NodeSet, K: NodeSet) -> int:
    """Minimal node distance between two node sets (0 when they meet)."""
    a, b = _node_list(ctx, J), _node_list(ctx, K)
    return min(abs(i - j) for i in a for j in b)


def boundary_gap(J: Subdiagram, i: int, j: int) -> int:
    """Distance from the interval spanned by ``i, j`` to the boundary of ``J``."""
    lo, hi = min(i, j), max(i, j)
    if lo < J.lo or hi > J.hi:
        raise CartanError(f"nodes {i},{j} not inside {J}")
    return min(lo - J.lo, J.hi - hi)


def dual_data(ctx: CartanContext, J: Subdiagram, i: int) -> tuple[int, int, int]:
    """Return ``(i*, w0_J(i), coxeter_J)`` for a node of ``J``."""
    J.check_within(ctx)
    return ctx.dual_node(i), J.w0(i), J.coxeter
