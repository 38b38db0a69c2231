"""Exhaustive survey of small Drinfeld polynomials.

Polynomials are enumerated as multisets of fundamental weights in a window
and deduplicated up to translation and the duality ``a -> -a``; each class
is certified and tabulated.  Graphs where no automated rule finds any rds
are listed as candidates, which is evidence only.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Optional, Sequence

from ..cartan import CartanContext
from ..drinfeld import DrinfeldPoly, Fundamental
from ..graph import qf_graph
from .certificates import RealityIndex, Status
from .search import DEFAULT_BUDGET, certify_real

DEFAULT_LIMIT = 20_000


class SurveyError(ValueError):
    pass


@dataclass(frozen=True)
class SurveyParams:
    rank: int
    lo: int
    hi: int
    max_degree: int
    nodes: Optional[tuple[int, ...]] = None
    parity: bool = False  # keep only weights i_a with a = i mod 2
    budget: int = DEFAULT_BUDGET
    limit: int = DEFAULT_LIMIT


@dataclass(frozen=True)
class SurveyEntry:
    poly: DrinfeldPoly
    vertices: int
    connected: bool
    index: RealityIndex


@dataclass
class SurveyReport:
    params: SurveyParams
    enumerated: int = 0
    entries: list[SurveyEntry] = field(default_factory=list)

    @property
    def status_counts(self) -> Counter:
        return Counter(e.index.status for e in self.entries)

    @property
    def candidates(self) -> list[SurveyEntry]:
        """Connected graphs with at least two vertices and no certified rds.

        Not conclusive: the automated rules are only sufficient conditions.
        """
        return [e for e in self.entries if e.connected and e.vertices >= 2 and e.index.q_lower <= 1]

    def find(self, pi: DrinfeldPoly) -> Optional[SurveyEntry]:
        key = canonical_key(pi)
        for e in self.entries:
            if canonical_key(e.poly) == key:
                return e
        return None

    def summary(self) -> str:
        p = self.params
        lines = [f"A{p.rank} centers {p.lo}..{p.hi} degree <= {p.max_degree}: "
                 f"{self.enumerated} polynomials, {len(self.entries)} classes"]
        for st in Status:
            lines.append(f"  {st.value}: {self.status_counts.get(st, 0)}")
        cands = self.candidates
        lines.append(f"  candidates without a certified rds (not conclusive): {len(cands)}")
        for e in cands:
            lines.append(f"    {e.poly}  [{e.index.status.value}]")
        return "\n".join(lines)


def _normalized(ws: Sequence[Fundamental]) -> tuple:
    m = min(w.center for w in ws)
    return tuple(sorted((w.node, w.center - m) for w in ws))


def canonical_key(pi: DrinfeldPoly) -> tuple:
    ws = pi.weights
    if not ws:
        return ()
    mirrored = [Fundamental(w.node, -w.center) for w in ws]
    return min(_normalized(ws), _normalized(mirrored))


def _alphabet(p: SurveyParams) -> list[Fundamental]:
    nodes = p.nodes or tuple(range(1, p.rank + 1))
    out = []
    for i in nodes:
        for a in range(p.lo, p.hi + 1):
            if not p.parity or (a - i) % 2 == 0:
                out.append(Fundamental(i, a))
    return out


def count_polynomials(p: SurveyParams) -> int:
    n = len(_alphabet(p))
    return sum(comb(n + k - 1, k) for k in range(1, p.max_degree + 1))


def survey(p: SurveyParams) -> SurveyReport:
    if p.hi < p.lo or p.max_degree < 1:
        raise SurveyError("empty window")
    ctx = CartanContext(p.rank)
    for i in p.nodes or ():
        ctx.check_node(i)
    total = count_polynomials(p)
    if total > p.limit:
        raise SurveyError(f"window has {total} polynomials, above the limit of {p.limit}")
    letters = _alphabet(p)
    report = SurveyReport(p, total)
    seen = set()
    for k in range(1, p.max_degree + 1):
        for ws in combinations_with_replacement(letters, k):
            pi = DrinfeldPoly(ctx, ws)
            key = canonical_key(pi)
            if key in seen:
                continue
            seen.add(key)
            G = qf_graph(pi)
            res = certify_real(G, budget=p.budget)
            report.entries.append(SurveyEntry(pi, G.n, G.is_connected(), res.index))
    return report
