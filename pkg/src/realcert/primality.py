"""Primality verdicts: dissociate factorizations, totally ordered graphs, prime
snakes and the exact criterion for 3-vertex alternating lines."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .cartan import CartanContext, Subdiagram
from .drinfeld import DrinfeldPoly, is_q_factorization
from .graph import QFGraph, fundamental_graph
from .redsets import red_set_restricted


class PrimalityError(ValueError):
    pass


@dataclass(frozen=True)
class Prime:
    justification: str
    kind = "prime"


@dataclass(frozen=True)
class Factors:
    factor: DrinfeldPoly
    cofactor: DrinfeldPoly
    justification: str
    kind = "factors"

    def __post_init__(self) -> None:
        if self.factor.is_one() or self.cofactor.is_one():
            raise PrimalityError("a factorization needs two nontrivial factors")


@dataclass(frozen=True)
class Unknown:
    justification: str = "no applicable criterion"
    kind = "unknown"


PrimalityVerdict = Union[Prime, Factors, Unknown]


def is_prime_snake(pi: DrinfeldPoly) -> bool:
    return not pi.is_one() and fundamental_graph(pi).is_totally_ordered()


def dissociate_factorization(G: QFGraph) -> list[DrinfeldPoly]:
    return [G.poly(c) for c in G.component_masks()]


def _require_actual(G: QFGraph) -> None:
    if not is_q_factorization(G.factors):
        raise PrimalityError("graph is not built on the actual q-factorization")


def totally_ordered_prime(G: QFGraph) -> PrimalityVerdict:
    _require_actual(G)
    if G.n == 0:
        raise PrimalityError("empty graph")
    if G.is_totally_ordered():
        return Prime("totally ordered q-factorization graph")
    return Unknown("graph is not totally ordered")


@dataclass(frozen=True)
class LineShape:
    """A 3-vertex alternating line: the middle vertex and its two ends."""
    middle: int
    ends: tuple[int, int]
    middle_is_source: bool


def line_shape(G: QFGraph) -> Optional[LineShape]:
    if G.n != 3:
        return None
    for v in range(3):
        ends = tuple(w for w in range(3) if w != v)
        a, b = ends
        if G.has_arrow(a, b) or G.has_arrow(b, a):
            continue
        if all(G.has_arrow(v, w) for w in ends):
            return LineShape(v, ends, True)
        if all(G.has_arrow(w, v) for w in ends):
            return LineShape(v, ends, False)
    return None


def minimal_interval(rank: int, i: int, j: int, r: int, s: int, m: int) -> Optional[Subdiagram]:
    """Smallest interval J containing i, j with ``m`` in the restricted set.

    Restricted sets only grow with the boundary gap ``min(lo', hi')`` of the
    pair inside J, so the answer is the symmetric widening of ``[i, j]`` by
    the smallest gap that works.
    """
    lo, hi = min(i, j), max(i, j)
    excess = m - (r + s + hi - lo)
    need = max(0, (excess + 1) // 2)
    if lo - need < 1 or hi + need > rank:
        return None
    J = Subdiagram(lo - need, hi + need)
    if m in red_set_restricted(CartanContext(rank), J, i, j, r, s):
        return J
    return None


def three_vertex_primality(G: QFGraph) -> PrimalityVerdict:
    """Exact primality test for a 3-vertex alternating line q-factorization graph."""
    _require_actual(G)
    shape = line_shape(G)
    if shape is None:
        raise PrimalityError("graph is not a 3-vertex line with a source or sink in the middle")
    ctx = G.ctx
    mid = G.factor(shape.middle)
    i, r = mid.node, mid.width
    ends = [G.factor(e) for e in shape.ends]
    exps = [abs(mid.center - f.center) for f in ends]
    d12 = abs(ends[0].node - ends[1].node)
    for j, jp in ((0, 1), (1, 0)):
        fj, fjp = ends[j], ends[jp]
        mj, mjp = exps[j], exps[jp]
        I = minimal_interval(ctx.rank, i, fj.node, r, fj.width, mj)
        if I is None or fjp.node not in I:
            continue
        if mjp not in red_set_restricted(ctx, I, i, fjp.node, r, fjp.width):
            continue
        if mjp - mj + I.coxeter not in red_set_restricted(ctx, I, I.w0(fj.node), fjp.node, fj.width, fjp.width):
            continue
        if mj + fj.width > mjp + fjp.width + d12:
            continue
        factor = DrinfeldPoly.from_factors(ctx, [fj])
        cofactor = G.poly().quotient(factor)
        return Factors(factor, cofactor, f"splits off {fj.label()} inside [{I.lo},{I.hi}]")
    return Prime("no end vertex satisfies the splitting conditions")


def prime_verdict(G: QFGraph) -> PrimalityVerdict:
    """Best available verdict for an actual q-factorization graph."""
    _require_actual(G)
    comps = G.component_masks()
    if len(comps) > 1:
        first = G.poly(comps[0])
        return Factors(first, G.poly().quotient(first), "graph is not connected")
    if line_shape(G) is not None:
        return three_vertex_primality(G)
    return totally_ordered_prime(G)

