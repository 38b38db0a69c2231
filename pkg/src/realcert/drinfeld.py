"""Drinfeld polynomials as multisets of fundamental weights, KR factors and
the q-factorization.

A fundamental weight ``i_a`` is a node together with an integer center.  A KR
factor of width ``r`` centered at ``a`` is the q-string
``i_{a-r+1}, i_{a-r+3}, ..., i_{a+r-1}``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .cartan import CartanContext, CartanError, Subdiagram
from .redsets import sl2_set


@dataclass(frozen=True, order=True)
class Fundamental:
    node: int
    center: int

    def as_factor(self) -> "KRFactor":
        return KRFactor(self.node, self.center, 1)

    def __str__(self) -> str:
        return f"{self.node}_{self.center}"


@dataclass(frozen=True, order=True)
class KRFactor:
    node: int
    center: int
    width: int = 1

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError(f"KR width must be positive, got {self.width}")

    @classmethod
    def from_span(cls, node: int, start: int, end: int) -> "KRFactor":
        if (end - start) % 2 or end < start:
            raise ValueError(f"bad q-string span {start}..{end}")
        return cls(node, (start + end) // 2, (end - start) // 2 + 1)

    @property
    def start(self) -> int:
        return self.center - self.width + 1

    @property
    def end(self) -> int:
        return self.center + self.width - 1

    def fundamentals(self) -> tuple[Fundamental, ...]:
        return tuple(Fundamental(self.node, c) for c in range(self.start, self.end + 1, 2))

    def shifted(self, m: int) -> "KRFactor":
        return KRFactor(self.node, self.center + m, self.width)

    def mirrored(self) -> "KRFactor":
        return KRFactor(self.node, -self.center, self.width)

    def label(self) -> str:
        base = f"{self.node}_{self.center}"
        return base if self.width == 1 else f"{base}^{self.width}"

    def __str__(self) -> str:
        return self.label()


def expand(f: KRFactor) -> tuple[Fundamental, ...]:
    return f.fundamentals()


DUAL_KINDS = ("star", "costar", "kappa", "kappa_star")


@dataclass(frozen=True)
class DrinfeldPoly:
    """A multiset of fundamental weights over a Cartan context.

    ``offset`` records how far the nodes were shifted by restriction to a
    subdiagram, so local node ``i`` is node ``i + offset`` of the parent.
    """

    ctx: CartanContext
    weights: tuple[Fundamental, ...] = ()
    offset: int = 0

    def __post_init__(self) -> None:
        ws = tuple(sorted(self.weights))
        for w in ws:
            if not 1 <= w.node <= self.ctx.rank:
                raise CartanError(f"{w} has node outside 1..{self.ctx.rank}")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def one(cls, ctx: CartanContext) -> "DrinfeldPoly":
        return cls(ctx, ())

    @classmethod
    def from_factors(cls, ctx: CartanContext, factors: Iterable[KRFactor]) -> "DrinfeldPoly":
        return cls(ctx, tuple(w for f in factors for w in f.fundamentals()))

    @property
    def degree(self) -> int:
        return len(self.weights)

    def is_one(self) -> bool:
        return not self.weights

    def counter(self) -> Counter:
        return Counter(self.weights)

    def __iter__(self) -> Iterator[Fundamental]:
        return iter(self.weights)

    def _check_same(self, other: "DrinfeldPoly") -> None:
        if self.ctx != other.ctx or self.offset != other.offset:
            raise ValueError("polynomials live over different contexts")

    def __mul__(self, other: "DrinfeldPoly") -> "DrinfeldPoly":
        self._check_same(other)
        return DrinfeldPoly(self.ctx, self.weights + other.weights, self.offset)

    def divides(self, other: "DrinfeldPoly") -> bool:
        self._check_same(other)
        return not (self.counter() - other.counter())

    def quotient(self, other: "DrinfeldPoly") -> "DrinfeldPoly":
        """``self / other``; raises if ``other`` does not divide ``self``."""
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        rest = self.counter() - other.counter()
        return DrinfeldPoly(self.ctx, tuple(rest.elements()), self.offset)

    def shifted(self, m: int) -> "DrinfeldPoly":
        return DrinfeldPoly(self.ctx, tuple(Fundamental(w.node, w.center + m) for w in self.weights), self.offset)

    def restrict(self, J: Subdiagram) -> "DrinfeldPoly":
        return restrict(self, J)

    def dualize(self, kind: str) -> "DrinfeldPoly":
        return dualize(self, kind)

    def __str__(self) -> str:
        if not self.weights:
            return "1"
        parts = []
        for w, m in sorted(self.counter().items()):
            parts.append(str(w) if m == 1 else f"{w}^{m}")
        return "·".join(parts)


def restrict(pi: DrinfeldPoly, J: Subdiagram) -> DrinfeldPoly:
    """Keep the weights supported on ``J`` and renumber ``J`` as ``1..#J``."""
    J.check_within(pi.ctx)
    shift = J.lo - 1
    kept = tuple(Fundamental(w.node - shift, w.center) for w in pi.weights if w.node in J)
    return DrinfeldPoly(CartanContext(J.size, pi.ctx.type_tag), kept, pi.offset + shift)


def dualize(pi: DrinfeldPoly, kind: str) -> DrinfeldPoly:
    ctx = pi.ctx
    h = ctx.coxeter
    if kind == "star":
        rule = lambda w: Fundamental(ctx.dual_node(w.node), w.center - h)
    elif kind == "costar":
        rule = lambda w: Fundamental(ctx.dual_node(w.node), w.center + h)
    elif kind == "kappa":
        rule = lambda w: Fundamental(ctx.dual_node(w.node), -w.center - h)
    elif kind == "kappa_star":
        rule = lambda w: Fundamental(w.node, -w.center)
    else:
        raise ValueError(f"unknown duality {kind!r}; expected one of {DUAL_KINDS}")
    return DrinfeldPoly(ctx, tuple(rule(w) for w in pi.weights), pi.offset)


@dataclass(frozen=True)
class PseudoFactorization:
    ctx: CartanContext
    factors: tuple[KRFactor, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            self.ctx.check_node(f.node)

    def poly(self) -> DrinfeldPoly:
        return DrinfeldPoly.from_factors(self.ctx, self.factors)

    def canonical(self) -> "PseudoFactorization":
        return PseudoFactorization(self.ctx, tuple(sorted(self.factors)))

    def is_q_factorization(self) -> bool:
        return is_q_factorization(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[KRFactor]:
        return iter(self.factors)

    def __str__(self) -> str:
        return " ".join(f.label() for f in self.factors)


def general_position(f: KRFactor, g: KRFactor) -> bool:
    """True unless ``f, g`` sit on one node and their strings can be merged."""
    if f.node != g.node:
        return True
    return abs(f.center - g.center) not in sl2_set(f.width, g.width)


def is_q_factorization(factors: Iterable[KRFactor]) -> bool:
    fs = list(factors)
    return all(general_position(fs[a], fs[b]) for a in range(len(fs)) for b in range(a + 1, len(fs)))


def merge_strings(f: KRFactor, g: KRFactor) -> tuple[KRFactor, ...]:
    """Replace two mergeable strings by their union and (nonempty) intersection."""
    union = KRFactor.from_span(f.node, min(f.start, g.start), max(f.end, g.end))
    lo, hi = max(f.start, g.start), min(f.end, g.end)
    if lo > hi:
        return (union,)
    return (union, KRFactor.from_span(f.node, lo, hi))


def _first_violation(fs: list[KRFactor]) -> tuple[int, int] | None:
    for a in range(len(fs)):
        for b in range(a + 1, len(fs)):
            if fs[a].node != fs[b].node:
                break  # sorted by node first
            if not general_position(fs[a], fs[b]):
                return a, b
    return None


def q_factorize(pi: DrinfeldPoly) -> PseudoFactorization:
    """The unique factorization of ``pi`` into q-strings in general position."""
    fs = sorted(w.as_factor() for w in pi.weights)
    while True:
        hit = _first_violation(fs)
        if hit is None:
            return PseudoFactorization(pi.ctx, tuple(fs))
        a, b = hit
        merged = merge_strings(fs[a], fs[b])
        fs = sorted(fs[:a] + fs[a + 1:b] + fs[b + 1:] + list(merged))
