"""Quochains assembled from multicuts of tree type.

``gtree_compose`` concatenates quochains of the parts when every endpoint of
a cut arrow is a base of its part.  ``kkop_tree_compose`` needs only real
parts with pairwise KKOP invariants at most 1 and yields a weak quochain.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterator, Optional, Sequence

from ..graph import Extremality, GraphError, QFGraph, bits
from ..kkop import DISSOCIATE, SPLIT, KkopNode, bound as kkop_bound
from .certificates import (
    HLW_BOTTOM, HLW_TOP, SIMPLE_KKOP, GtreeChain, HlwProof, Quochain, RdsCertificate, SimpleProof,
)
from .ledger import AssumptionLedger
from .search import DEFAULT_BUDGET, Certifier

MAX_ENUM_VERTICES = 10
MAX_ENUM_ARROWS = 16


def _ordered(G: QFGraph, parts: Sequence, within: Optional[int]) -> list[int]:
    S = G.full if within is None else within
    if not G.is_gtree(parts, S):
        raise GraphError("multicut is not a G-tree")
    return [G.check_ids(p) for p in G.leaf_order(parts, S)]


def _endpoints(G: QFGraph, parts: list[int], S: int) -> set[int]:
    return {v for a in G.cut_set(parts, S) for v in a}


def gtree_compose(G: QFGraph, parts: Sequence, ledger: Optional[AssumptionLedger] = None,
                  budget: int = DEFAULT_BUDGET, certifier: Optional[Certifier] = None,
                  within: Optional[int] = None) -> Optional[GtreeChain]:
    S = G.full if within is None else within
    order = _ordered(G, parts, S)
    c = certifier or Certifier(G, ledger, budget)
    ends = _endpoints(G, order, S)
    bases = {}
    for v in sorted(ends):
        P = next(p for p in order if p >> v & 1)
        q = c.chain(P, v)
        if q is None or q.terminal.mask != 1 << v:
            return None  # not well-based
        bases[v] = q
    chosen = []
    for k, P in enumerate(order):
        later = 0
        for Q in order[k + 1:]:
            later |= Q
        link = [v for v in bits(P) if v in ends and G.neighbours(v, later)]
        if k < len(order) - 1:
            if len(link) != 1:
                return None
            v = link[0]
        else:
            cand = sorted(v for v in bits(P) if v in ends)
            if not cand:
                q = c.chain(P)
                if q is None or q.terminal_vertex is None:
                    return None
                v = q.terminal_vertex
                bases[v] = c.chain(P, v)
                if bases[v] is None:
                    return None
            else:
                v = cand[0]
        chosen.append(v)
    return GtreeChain(S, tuple(order), tuple(sorted(bases.items())), tuple(chosen))


def _pair_trace(G: QFGraph, H: int, rest: int, linked: int, pair: KkopNode) -> KkopNode:
    """Trace for d(H, rest) from the bound on the single linked part."""
    if rest == linked:
        return pair
    L = tuple(sorted(G.factors_of(H)))
    far = rest & ~linked
    R = tuple(sorted(G.factors_of(rest)))
    diss = KkopNode(DISSOCIATE, L, tuple(sorted(G.factors_of(far))), 0, 0, note="no arrows between the subgraphs")
    return KkopNode(SPLIT, L, R, pair.upper, 0, (pair, diss), note="split off the linked part")


def kkop_tree_compose(G: QFGraph, parts: Sequence, ledger: Optional[AssumptionLedger] = None,
                      budget: int = DEFAULT_BUDGET, certifier: Optional[Certifier] = None,
                      within: Optional[int] = None) -> Optional[Quochain]:
    S = G.full if within is None else within
    order = _ordered(G, parts, S)
    c = certifier or Certifier(G, ledger, budget)
    reals = [c.real(P) for P in order]
    if any(r is None for r in reals):
        return None
    pair: dict[tuple[int, int], KkopNode] = {}
    for a, b in combinations(range(len(order)), 2):
        if G.is_linked(order[a], order[b]):
            bd = kkop_bound(G, order[a], order[b], c.kkop_budget)
            if bd.upper > 1:
                return None
            pair[(a, b)] = bd.trace
    steps = []
    for k in range(len(order) - 1):
        P = order[k]
        rest = 0
        for Q in order[k + 1:]:
            rest |= Q
        Sk = P | rest
        m = next(j for j in range(k + 1, len(order)) if (k, j) in pair)
        ext = G.is_extremal(P, Sk)
        if ext is Extremality.TOP:
            hlw = HlwProof(HLW_TOP, "part")
        elif ext is Extremality.BOTTOM:
            hlw = HlwProof(HLW_BOTTOM, "rest")
        else:  # pragma: no cover - one cut arrow always makes the part extremal
            return None
        trace = _pair_trace(G, P, rest, order[m], pair[(k, m)])
        steps.append(RdsCertificate(Sk, P, reals[k], hlw, SimpleProof(SIMPLE_KKOP, Sk, trace=trace)))
    return Quochain(S, tuple(steps), reals[-1], via="kkop-tree")


# -- multicut enumeration -----------------------------------------------------

def enumerate_gtree_multicuts(G: QFGraph, within: Optional[int] = None) -> Iterator[list[int]]:
    """All G-tree multicuts with at least two parts: choose cut arrows C whose
    deletion leaves exactly |C| + 1 components, each arrow of C joining two
    of them."""
    S = G.full if within is None else within
    if not G.is_connected(S):
        return
    arrows = G.arrows_within(S)
    if len(bits(S)) > MAX_ENUM_VERTICES or len(arrows) > MAX_ENUM_ARROWS:
        return
    for k in range(1, len(arrows) + 1):
        for C in combinations(arrows, k):
            parts = _components_without(G, S, set(C))
            if len(parts) != k + 1:
                continue
            owner = {v: i for i, p in enumerate(parts) for v in bits(p)}
            if all(owner[t] != owner[h] for t, h in C) and len(G.cut_set(parts, S)) == k:
                yield parts


def _components_without(G: QFGraph, S: int, removed: set) -> list[int]:
    adj = {v: 0 for v in bits(S)}
    for t, h in G.arrows_within(S):
        if (t, h) not in removed:
            adj[t] |= 1 << h
            adj[h] |= 1 << t
    parts, left = [], S
    while left:
        seed = left & -left
        part, frontier = seed, seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~part
            part |= frontier
        parts.append(part)
        left &= ~part
    return parts


def best_composition(G: QFGraph, certifier: Certifier):
    """Longest chain obtainable from enumerated tree-type multicuts."""
    best = None
    for parts in enumerate_gtree_multicuts(G):
        for compose in (gtree_compose, kkop_tree_compose):
            q = compose(G, parts, certifier=certifier)
            if q is not None and (best is None or q.length > best.length):
                best = q
                if best.length == G.n:
                    return best
    return best
