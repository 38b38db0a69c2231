"""Quochain search.

``Certifier`` explores rds candidates of a subgraph, recursing on the
complement, and keeps the longest weak quochain it can certify.  Results are
memoized per (subgraph, requested terminal vertex).
"""
from __future__ import annotations

from itertools import combinations
from typing import Optional, Union

from ..drinfeld import DrinfeldPoly
from ..graph import QFGraph, bits, qf_graph
from ..primality import is_prime_snake
from .certificates import (
    REAL_CHAIN, REAL_KR, REAL_LEDGER, REAL_SNAKE, Certified, CertifyResult, Chain, Inconclusive,
    Quochain, RdsCertificate, RdsVerdict, RealityIndex, RealProof, Refuted, Status,
)
from .ledger import EMPTY, AssumptionLedger, _shift_key
from .rds import KKOP_INNER_BUDGET, hlw_proof, popcount, refute_hlw_by_restriction, simple_proof

DEFAULT_BUDGET = 20_000
LEDGER_SUBSET_LIMIT = 16


class Certifier:
    def __init__(self, G: QFGraph, ledger: Optional[AssumptionLedger] = None,
                 budget: int = DEFAULT_BUDGET, kkop_budget: int = KKOP_INNER_BUDGET):
        self.G = G
        self.ledger = ledger or EMPTY
        self.budget = budget
        self.kkop_budget = kkop_budget
        self.explored = 0
        self.exhausted = False
        self._chains: dict[tuple[int, Optional[int]], Optional[Quochain]] = {}
        self._real: dict[int, Optional[RealProof]] = {}
        self._rds: dict[tuple[int, int], Optional[tuple]] = {}
        self._ledger_keys = {_shift_key(p) for p in self.ledger.operands()}

    # -- reality of subgraphs --------------------------------------------
    def real(self, S: int) -> Optional[RealProof]:
        if S in self._real:
            return self._real[S]
        proof = self._real_uncached(S)
        self._real[S] = proof
        return proof

    def _real_uncached(self, S: int) -> Optional[RealProof]:
        if popcount(S) == 1:
            return RealProof(REAL_KR, S)
        if is_prime_snake(self.G.poly(S)):
            return RealProof(REAL_SNAKE, S)
        q = self.chain(S)
        if q is not None:
            return RealProof(REAL_CHAIN, S, chain=q)
        return self._ledger_real(S)

    def _ledger_real(self, S: int) -> Optional[RealProof]:
        if self.ledger:
            f = self.ledger.real(self.G.poly(S))
            if f is not None:
                return RealProof(REAL_LEDGER, S, fact=f)
        return None

    def _terminal(self, S: int) -> Optional[RealProof]:
        """Reality of ``S`` without splitting it further."""
        if popcount(S) == 1:
            return RealProof(REAL_KR, S)
        if is_prime_snake(self.G.poly(S)):
            return RealProof(REAL_SNAKE, S)
        return self._ledger_real(S)

    # -- rds checks ------------------------------------------------------
    def rds(self, S: int, H: int) -> Optional[RdsCertificate]:
        """An rds certificate for ``H`` inside ``S`` whose complement is
        certified real by the caller."""
        key = (S, H)
        if key in self._rds:
            hit = self._rds[key]
            return None if hit is None else RdsCertificate(S, H, hit[0], hit[1], hit[2])
        self.explored += 1
        out = None
        hlw = hlw_proof(self.G, S, H, self.ledger)
        if hlw is not None:
            simple = simple_proof(self.G, S, H, self.ledger, self.kkop_budget)
            if simple is not None:
                part_real = self.real(H)
                if part_real is not None:
                    out = (part_real, hlw, simple)
        self._rds[key] = out
        return None if out is None else RdsCertificate(S, H, *out)

    # -- candidates --------------------------------------------------------
    def candidates(self, S: int, terminal: Optional[int] = None) -> list[int]:
        G = self.G
        seen: set[int] = set()
        out: list[int] = []

        def add(H: int) -> None:
            if H and H != S and not H & ~S and H not in seen:
                if terminal is not None and H >> terminal & 1:
                    return
                seen.add(H)
                out.append(H)

        def key(v: int):
            info = G.classify_vertex(v, S)
            return (not (info.is_source or info.is_sink), len(info.adjacency), v)

        for v in sorted(bits(S), key=key):
            add(1 << v)
        if self._ledger_keys and popcount(S) <= LEDGER_SUBSET_LIMIT:
            vs = bits(S)
            for k in range(1, len(vs)):
                for combo in combinations(vs, k):
                    H = sum(1 << v for v in combo)
                    if _shift_key(G.poly(H)) in self._ledger_keys:
                        add(H)
                        add(S & ~H)
        comps = G.component_masks(S)
        for t, h in G.arrows_within(S):
            whole = next(c for c in comps if c >> t & 1)
            cut = _without_arrow(G, whole, t, h)
            if len(cut) == 2:
                for c in cut:
                    add(c)
        if len(comps) > 1:
            for c in comps:
                add(c)
        return out

    # -- quochains ---------------------------------------------------------
    def chain(self, S: int, terminal: Optional[int] = None) -> Optional[Quochain]:
        key = (S, terminal)
        if key in self._chains:
            return self._chains[key]
        self._chains[key] = None  # guards against re-entry on the same state
        q = self._chain(S, terminal)
        self._chains[key] = q
        return q

    def _chain(self, S: int, terminal: Optional[int]) -> Optional[Quochain]:
        n = popcount(S)
        if terminal is not None and not S >> terminal & 1:
            raise ValueError("requested terminal vertex is not in the subgraph")
        best: Optional[Quochain] = None
        if terminal is None or S == 1 << terminal:
            t = self._terminal(S)
            if t is not None:
                best = Quochain(S, (), t)
        if n == 1:
            return best
        for H in self.candidates(S, terminal):
            if self.explored >= self.budget:
                self.exhausted = True
                break
            cert = self.rds(S, H)
            if cert is None:
                continue
            rest = self.chain(S & ~H, terminal)
            if rest is None:
                continue
            length = 1 + rest.length
            if best is None or length > best.length:
                best = Quochain(S, (cert,) + rest.steps, rest.terminal)
                if length == n:
                    break
        return best


def _without_arrow(G: QFGraph, comp: int, t: int, h: int) -> list[int]:
    """Components of ``comp`` after deleting the single arrow ``t -> h``."""
    parts, left = [], comp
    while left:
        seed = left & -left
        part, frontier = seed, seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nb = G.neighbours(v, comp)
                if v == t:
                    nb &= ~(1 << h)
                if v == h:
                    nb &= ~(1 << t)
                nxt |= nb
            frontier = nxt & ~part
            part |= frontier
        parts.append(part)
        left &= ~part
    return parts


# -- public operations -------------------------------------------------------

GraphLike = Union[QFGraph, DrinfeldPoly]


def as_graph(x: GraphLike) -> QFGraph:
    return x if isinstance(x, QFGraph) else qf_graph(x)


def check_rds(G: QFGraph, H, ledger: Optional[AssumptionLedger] = None,
              budget: int = DEFAULT_BUDGET, within=None) -> RdsVerdict:
    """Decide whether ``H`` is an rds of ``within`` (default: all of G) with
    the automated rules and the ledger."""
    S = G.full if within is None else G.check_ids(within)
    h = G.check_ids(H)
    if not h or h & ~S:
        raise ValueError("H must be a nonempty subgraph of the ambient graph")
    if h == S:
        if popcount(S) == 1:
            return Certified(RdsCertificate(S, S, RealProof(REAL_KR, S), None, None))
        raise ValueError("H must be a proper subgraph")
    cert = Certifier(G, ledger, budget)
    hlw = hlw_proof(G, S, h, cert.ledger)
    if hlw is None:
        w = refute_hlw_by_restriction(G, h, S)
        if w is not None:
            return Refuted("highest-l-weight condition fails after restriction", w)
        return Inconclusive("no rule shows either tensor order is highest-l-weight")
    part_real = cert.real(h)
    if part_real is None:
        return Inconclusive("part not certified real")
    rest_real = cert.real(S & ~h)
    if rest_real is None:
        return Inconclusive("complement not certified real")
    simple = simple_proof(G, S, h, cert.ledger)
    if simple is None:
        return Inconclusive("no simplicity rule applies")
    return Certified(RdsCertificate(S, h, part_real, hlw, simple, rest_real))


def _status(unconditional: Optional[Chain], n: int) -> Status:
    if unconditional is None:
        return Status.INCONCLUSIVE
    return Status.STRONGLY_REAL if unconditional.length == n else Status.REAL_CERTIFIED


def certify_real(x: GraphLike, ledger: Optional[AssumptionLedger] = None, budget: int = DEFAULT_BUDGET,
                 terminal: Optional[int] = None, compose: bool = True) -> CertifyResult:
    """Search for the longest weak quochain of a graph.

    The search runs once without the ledger, which fixes the status, and once
    with it; the longer chain is reported.
    """
    from .compose import best_composition

    G = as_graph(x)
    if G.n == 0:
        raise ValueError("empty graph")
    n = G.n
    notes = []
    passes = [(EMPTY, "automated rules")]
    if ledger:
        passes.append((ledger, "with ledger"))
    found: list[Optional[Chain]] = []
    explored = 0
    for led, label in passes:
        c = Certifier(G, led, budget)
        q: Optional[Chain] = c.chain(G.full, terminal)
        explored += c.explored
        if c.exhausted:
            notes.append(f"search budget reached ({label})")
        if compose and terminal is None and (q is None or q.length < n):
            alt = best_composition(G, c)
            if alt is not None and (q is None or alt.length > q.length):
                q = alt
        found.append(q)
    unconditional = found[0]
    if unconditional is None and len(found) > 1 and found[1] is not None:
        status = Status.CONDITIONAL
    else:
        status = _status(unconditional, n)
    best = max((q for q in found if q is not None), key=lambda q: q.length, default=None)
    q_lower = best.length if best is not None else 0
    index = RealityIndex(q_lower, n - q_lower, status)
    return CertifyResult(best, index, explored, tuple(notes), unconditional if unconditional is not best else None)


def reality_index(x: GraphLike, ledger: Optional[AssumptionLedger] = None,
                  budget: int = DEFAULT_BUDGET) -> RealityIndex:
    return certify_real(x, ledger, budget).index

