"""Pseudo q-factorization digraphs.

Vertices are KR factors with stable integer ids (duplicates allowed).  There
is an arrow ``v -> w`` exactly when the tensor product of the two KR modules
is reducible and ``v`` carries the larger center.  Subgraphs are always
induced and are passed around as frozensets of vertex ids; internally they
are int bitmasks.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence, Union

from .cartan import CartanContext
from .drinfeld import DrinfeldPoly, KRFactor, PseudoFactorization, q_factorize
from .redsets import Direction, arrow_between

SubgraphRef = frozenset
Ids = Union[int, Iterable[int]]  # a bitmask or an iterable of ids
Arrow = tuple[int, int]


class GraphError(ValueError):
    pass


class Extremality(Enum):
    TOP = "top"
    BOTTOM = "bottom"
    NO = "no"


@dataclass(frozen=True)
class VertexInfo:
    is_source: bool
    is_sink: bool
    valence: int
    adjacency: frozenset[int]


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(ids: Ids) -> int:
    if isinstance(ids, int):
        return ids
    m = 0
    for v in ids:
        m |= 1 << v
    return m


class QFGraph:
    """Immutable pseudo q-factorization graph over ``factors``."""

    def __init__(self, ctx: CartanContext, factors: Sequence[KRFactor]):
        self.ctx = ctx
        self.factors: tuple[KRFactor, ...] = tuple(factors)
        for f in self.factors:
            ctx.check_node(f.node)
        n = len(self.factors)
        succ, pred = [0] * n, [0] * n
        arrows = []
        for a in range(n):
            for b in range(a + 1, n):
                d = arrow_between(ctx, self.factors[a], self.factors[b])
                if d is None:
                    continue
                t, h = (a, b) if d is Direction.FORWARD else (b, a)
                succ[t] |= 1 << h
                pred[h] |= 1 << t
                arrows.append((t, h))
        self.succ = tuple(succ)
        self.pred = tuple(pred)
        self.arrows: tuple[Arrow, ...] = tuple(sorted(arrows))
        self.full = (1 << n) - 1
        # ascending centers is a topological order (heads before tails)
        self._bottom_up = sorted(range(n), key=lambda v: (self.factors[v].center, v))
        self._reach: dict[int, tuple[int, ...]] = {}

    # -- basics --------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def factor(self, v: int) -> KRFactor:
        return self.factors[v]

    def check_ids(self, ids: Ids) -> int:
        m = to_mask(ids)
        if m & ~self.full:
            raise GraphError(f"unknown vertex ids in {sorted(bits(m & ~self.full))}")
        return m

    def factors_of(self, ids: Ids) -> tuple[KRFactor, ...]:
        return tuple(self.factors[v] for v in bits(self.check_ids(ids)))

    def poly(self, ids: Optional[Ids] = None) -> DrinfeldPoly:
        m = self.full if ids is None else self.check_ids(ids)
        return DrinfeldPoly.from_factors(self.ctx, self.factors_of(m))

    def pseudo_factorization(self) -> PseudoFactorization:
        return PseudoFactorization(self.ctx, self.factors)

    def has_arrow(self, t: int, h: int) -> bool:
        return bool(self.succ[t] >> h & 1)

    def neighbours(self, v: int, within: int) -> int:
        return (self.succ[v] | self.pred[v]) & within

    def arrows_within(self, ids: Ids) -> list[Arrow]:
        m = self.check_ids(ids)
        return [(t, h) for t, h in self.arrows if m >> t & 1 and m >> h & 1]

    def arrows_between(self, A: Ids, B: Ids) -> list[Arrow]:
        a, b = to_mask(A), to_mask(B)
        return [(t, h) for t, h in self.arrows if (a >> t & 1 and b >> h & 1) or (b >> t & 1 and a >> h & 1)]

    def is_linked(self, A: Ids, B: Ids) -> bool:
        a, b = to_mask(A), to_mask(B)
        return any(self.neighbours(v, b) for v in bits(a))

    # -- order ---------------------------------------------------------
    def reach(self, within: Optional[Ids] = None) -> tuple[int, ...]:
        """Descendant masks inside the induced subgraph on ``within``."""
        m = self.full if within is None else self.check_ids(within)
        cached = self._reach.get(m)
        if cached is not None:
            return cached
        r = [0] * self.n
        for v in self._bottom_up:
            if not m >> v & 1:
                continue
            acc = 0
            for w in bits(self.succ[v] & m):
                acc |= (1 << w) | r[w]
            r[v] = acc
        out = tuple(r)
        self._reach[m] = out
        return out

    def comparable(self, u: int, v: int, within: Optional[Ids] = None) -> bool:
        r = self.reach(within)
        return bool(r[u] >> v & 1 or r[v] >> u & 1)

    def is_totally_ordered(self, within: Optional[Ids] = None) -> bool:
        m = self.full if within is None else self.check_ids(within)
        r = self.reach(m)
        vs = bits(m)
        return all(r[u] >> v & 1 or r[v] >> u & 1 for i, u in enumerate(vs) for v in vs[i + 1:])

    # -- structure -----------------------------------------------------
    def component_masks(self, within: Optional[Ids] = None) -> list[int]:
        m = self.full if within is None else self.check_ids(within)
        comps, left = [], m
        while left:
            seed = left & -left
            comp, frontier = seed, seed
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.neighbours(v, m)
                frontier = nxt & ~comp
                comp |= frontier
            comps.append(comp)
            left &= ~comp
        return comps

    def connected_components(self, within: Optional[Ids] = None) -> list[frozenset[int]]:
        return [frozenset(bits(c)) for c in self.component_masks(within)]

    def is_connected(self, within: Optional[Ids] = None) -> bool:
        return len(self.component_masks(within)) == 1

    def classify_vertex(self, v: int, within: Optional[Ids] = None) -> VertexInfo:
        m = self.full if within is None else self.check_ids(within)
        if not (0 <= v < self.n and m >> v & 1):
            raise GraphError(f"vertex {v} not in subgraph")
        out, inc = self.succ[v] & m, self.pred[v] & m
        adj = out | inc
        return VertexInfo(not inc, not out, bin(adj).count("1"), frozenset(bits(adj | 1 << v)))

    def is_extremal(self, H: Ids, within: Optional[Ids] = None) -> Extremality:
        m = self.full if within is None else self.check_ids(within)
        h = self.check_ids(H)
        if h & ~m:
            raise GraphError("subgraph is not inside the ambient graph")
        rest = m & ~h
        if not any(self.pred[v] & rest for v in bits(h)):
            return Extremality.TOP
        if not any(self.succ[v] & rest for v in bits(h)):
            return Extremality.BOTTOM
        return Extremality.NO

    # -- multicuts -----------------------------------------------------
    def check_multicut(self, parts: Sequence[Ids], within: Optional[Ids] = None) -> list[int]:
        m = self.full if within is None else self.check_ids(within)
        masks = [self.check_ids(p) for p in parts]
        if not masks or any(p == 0 for p in masks):
            raise GraphError("multicut parts must be nonempty")
        seen = 0
        for p in masks:
            if p & seen:
                raise GraphError("multicut parts overlap")
            seen |= p
        if seen != m:
            raise GraphError("multicut parts do not cover the graph")
        return masks

    def cut_set(self, parts: Sequence[Ids], within: Optional[Ids] = None) -> list[Arrow]:
        masks = self.check_multicut(parts, within)
        owner = {}
        for k, p in enumerate(masks):
            for v in bits(p):
                owner[v] = k
        return [(t, h) for t, h in self.arrows if t in owner and h in owner and owner[t] != owner[h]]

    def is_gtree(self, parts: Sequence[Ids], within: Optional[Ids] = None) -> bool:
        masks = self.check_multicut(parts, within)
        m = self.full if within is None else to_mask(within)
        return self.is_connected(m) and len(self.cut_set(masks, m)) == len(masks) - 1

    def leaf_order(self, parts: Sequence[Ids], within: Optional[Ids] = None) -> list[frozenset[int]]:
        """Reorder a G-tree multicut so each part but the last is linked to
        exactly one later part."""
        if not self.is_gtree(parts, within):
            raise GraphError("leaf_order needs a G-tree multicut")
        left = [self.check_ids(p) for p in parts]
        out = []
        while len(left) > 1:
            for k, p in enumerate(left):
                others = [q for j, q in enumerate(left) if j != k]
                if sum(1 for q in others if self.is_linked(p, q)) == 1:
                    out.append(p)
                    del left[k]
                    break
            else:  # pragma: no cover - impossible for a tree
                raise GraphError("no leaf part found")
        out.extend(left)
        return [frozenset(bits(p)) for p in out]

    # -- derived graphs ------------------------------------------------
    def arrow_dual(self) -> "QFGraph":
        return QFGraph(self.ctx, [f.mirrored() for f in self.factors])

    def signature(self) -> tuple:
        """Id-insensitive description used for graph equality in tests."""
        arrows = sorted((self.factors[t], self.factors[h]) for t, h in self.arrows)
        return tuple(sorted(self.factors)), tuple(arrows)

    def to_dot(self, name: str = "G", labels: Optional[Sequence[str]] = None) -> str:
        labels = labels or [f.label() for f in self.factors]
        lines = [f"digraph {name} {{"]
        for v, lab in enumerate(labels):
            lines.append(f'  v{v} [label="{lab}"];')
        for t, h in self.arrows:
            lines.append(f"  v{t} -> v{h};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def describe(self, ids: Optional[Ids] = None) -> str:
        m = self.full if ids is None else to_mask(ids)
        return "{" + ", ".join(self.factors[v].label() for v in bits(m)) + "}"

    def __repr__(self) -> str:
        return f"QFGraph({self.ctx}, [{', '.join(f.label() for f in self.factors)}])"


def build_graph(ctx: CartanContext, f: Union[PseudoFactorization, Iterable[KRFactor]]) -> QFGraph:
    factors = f.factors if isinstance(f, PseudoFactorization) else tuple(f)
    return QFGraph(ctx, factors)


def qf_graph(pi: DrinfeldPoly) -> QFGraph:
    """The q-factorization graph of ``pi``."""
    return QFGraph(pi.ctx, q_factorize(pi).factors)


def fundamental_graph(pi: DrinfeldPoly) -> QFGraph:
    return QFGraph(pi.ctx, [w.as_factor() for w in pi.weights])


def classify_vertex(G: QFGraph, v: int) -> VertexInfo:
    return G.classify_vertex(v)


def is_extremal(G: QFGraph, H: Ids) -> Extremality:
    return G.is_extremal(H)


def is_totally_ordered(G: QFGraph) -> bool:
    return G.is_totally_ordered()


def connected_components(G: QFGraph) -> list[frozenset[int]]:
    return G.connected_components()


def cut_set(G: QFGraph, parts: Sequence[Ids]) -> list[Arrow]:
    return G.cut_set(parts)


def is_gtree(G: QFGraph, parts: Sequence[Ids]) -> bool:
    return G.is_gtree(parts)


def leaf_order(G: QFGraph, parts: Sequence[Ids]) -> list[frozenset[int]]:
    return G.leaf_order(parts)


def arrow_dual(G: QFGraph) -> QFGraph:
    return G.arrow_dual()
