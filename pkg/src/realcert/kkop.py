"""Upper bounds for the KKOP invariant by a small searchable rule system.

A search state is a pair of multisets of KR pieces (two pseudo
factorizations).  Leaves close a state with one of the rules below; inner
nodes use subadditivity, ``d(L, R) <= d(L, R1) + d(L, R2)`` whenever the
polynomial of ``R`` is the product of those of ``R1`` and ``R2``.

Rules
    dissociate        no fundamental of one side is linked to one of the other: 0
    fundamental-pair  two single fundamentals: exact value 0 or 1
    naoi-chain        a single fundamental extending the other side to an
                      ascending chain of linked fundamentals: exactly 1
    snake-pair        fundamental graph of the union totally ordered: at most 1
                      (adopted rule, flagged in the trace)
    split             subadditivity over a split of one side
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence, Union

from .cartan import CartanContext
from .drinfeld import DrinfeldPoly, Fundamental, KRFactor
from .graph import QFGraph, fundamental_graph
from .redsets import arrow_between, red_set

DISSOCIATE = "dissociate"
FUNDAMENTAL = "fundamental-pair"
NAOI = "naoi-chain"
SNAKE = "snake-pair"
SPLIT = "split"
EXHAUSTED = "budget-exhausted"
RULES = (DISSOCIATE, FUNDAMENTAL, NAOI, SNAKE, SPLIT, EXHAUSTED)
EXACT_RULES = (DISSOCIATE, FUNDAMENTAL, NAOI)

DEFAULT_BUDGET = 50_000
INF = math.inf

Side = tuple[KRFactor, ...]
Number = Union[int, float]


@dataclass(frozen=True)
class KkopNode:
    rule: str
    left: Side
    right: Side
    upper: Number
    lower: int = 0
    children: tuple["KkopNode", ...] = ()
    adopted: bool = False
    note: str = ""

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def rules_used(self) -> set[str]:
        out = {self.rule}
        for c in self.children:
            out |= c.rules_used()
        return out


@dataclass(frozen=True)
class KkopBound:
    lower: int
    upper: Number
    trace: KkopNode
    explored: int = 0

    @property
    def exhausted(self) -> bool:
        return self.upper == INF

    @property
    def adopted(self) -> bool:
        return SNAKE in self.trace.rules_used()


class KkopError(ValueError):
    pass


class _Exhausted(Exception):
    pass


def fundamental_d(ctx: CartanContext, v: Fundamental, w: Fundamental) -> int:
    """Exact KKOP invariant of two fundamental modules (0 or 1)."""
    return int(abs(v.center - w.center) in red_set(ctx, v.node, w.node))


def naoi_chain_check(ctx: CartanContext, seq: Sequence[Fundamental]) -> bool:
    if len(seq) < 2:
        raise KkopError("a chain needs at least two fundamentals")
    return all(b.center - a.center in red_set(ctx, a.node, b.node) for a, b in zip(seq, seq[1:]))


@lru_cache(maxsize=200_000)
def _pieces_linked(ctx: CartanContext, p: KRFactor, q: KRFactor) -> bool:
    for x in p.fundamentals():
        for y in q.fundamentals():
            if x.center != y.center and abs(x.center - y.center) in red_set(ctx, x.node, y.node):
                return True
    return False


def sides_linked(ctx: CartanContext, L: Iterable[KRFactor], R: Iterable[KRFactor]) -> bool:
    R = tuple(R)
    return any(_pieces_linked(ctx, p, q) for p in L for q in R)


def _fund(side: Iterable[KRFactor]) -> list[Fundamental]:
    return [w for f in side for w in f.fundamentals()]


def naoi_applies(ctx: CartanContext, single: Side, other: Side) -> bool:
    if len(single) != 1 or single[0].width != 1 or not other:
        return False
    f = single[0].fundamentals()[0]
    seq = sorted(_fund(other) + [f], key=lambda w: (w.center, w.node))
    if seq[0] != f and seq[-1] != f:
        return False
    return naoi_chain_check(ctx, seq)


def snake_pair_applies(ctx: CartanContext, L: Side, R: Side) -> bool:
    ws = sorted(_fund(L) + _fund(R))
    m = min(w.center for w in ws)
    return _totally_ordered(ctx, tuple(Fundamental(w.node, w.center - m) for w in ws))


@lru_cache(maxsize=100_000)
def _totally_ordered(ctx: CartanContext, ws: tuple[Fundamental, ...]) -> bool:
    return fundamental_graph(DrinfeldPoly(ctx, ws)).is_totally_ordered()


def _sorted(side: Iterable[KRFactor]) -> Side:
    return tuple(sorted(side))


def _minus(side: Side, drop: Side) -> Side:
    rest = list(side)
    for f in drop:
        rest.remove(f)
    return tuple(rest)


def _string(node: int, centers: list[int]) -> Optional[KRFactor]:
    if not centers:
        return None
    return KRFactor.from_span(node, centers[0], centers[-1])


def _components(ctx: CartanContext, side: Side) -> list[Side]:
    left = list(range(len(side)))
    comps = []
    while left:
        comp, frontier = {left[0]}, [left[0]]
        while frontier:
            a = frontier.pop()
            for b in left:
                if b not in comp and _pieces_linked(ctx, side[a], side[b]):
                    comp.add(b)
                    frontier.append(b)
        comps.append(tuple(side[k] for k in sorted(comp)))
        left = [k for k in left if k not in comp]
    return comps


def _cross_group(ctx: CartanContext, L: Side, R: Side) -> Side:
    """Pieces of L reachable from L[0] through links across the two sides."""
    seen_l, seen_r = {0}, set()
    frontier = [0]
    while frontier:
        a = frontier.pop()
        for b, q in enumerate(R):
            if b not in seen_r and _pieces_linked(ctx, L[a], q):
                seen_r.add(b)
                for c, p in enumerate(L):
                    if c not in seen_l and _pieces_linked(ctx, p, q):
                        seen_l.add(c)
                        frontier.append(c)
    return tuple(L[k] for k in sorted(seen_l))


class _Engine:
    def __init__(self, ctx: CartanContext, budget: int):
        self.ctx = ctx
        self.budget = budget
        self.misses = 0
        self.memo: dict[tuple[Side, Side], KkopNode] = {}

    def solve(self, L: Side, R: Side) -> KkopNode:
        key = (L, R) if L <= R else (R, L)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.misses += 1
        if self.misses > self.budget:
            raise _Exhausted
        node = self._solve(*key)
        self.memo[key] = node
        return node

    def _solve(self, L: Side, R: Side) -> KkopNode:
        ctx = self.ctx
        if not sides_linked(ctx, L, R):
            return KkopNode(DISSOCIATE, L, R, 0, 0)
        # forced simplification: drop pieces unlinked to the other side
        for side, other, flip in ((L, R, False), (R, L, True)):
            loose = tuple(p for p in side if not sides_linked(ctx, (p,), other))
            if loose:
                kept = _minus(side, loose)
                a = self.solve(kept, other)
                b = KkopNode(DISSOCIATE, *((other, loose) if flip else (loose, other)), 0, 0)
                return KkopNode(SPLIT, L, R, a.upper, 0, (a, b), note="peel unlinked pieces")
        if len(L) == 1 == len(R) and L[0].width == 1 == R[0].width:
            d = fundamental_d(ctx, L[0].fundamentals()[0], R[0].fundamentals()[0])
            return KkopNode(FUNDAMENTAL, L, R, d, d)
        if naoi_applies(ctx, L, R) or naoi_applies(ctx, R, L):
            return KkopNode(NAOI, L, R, 1, 1)
        if snake_pair_applies(ctx, L, R):
            return KkopNode(SNAKE, L, R, 1, 0, adopted=True)
        best: Optional[KkopNode] = None
        for side_is_left, part1, part2, note in self._splits(L, R):
            other = R if side_is_left else L
            pair = (lambda s: (s, other)) if side_is_left else (lambda s: (other, s))
            bound = best.upper if best is not None else INF
            a = self.solve(*map(_sorted, pair(part1)))
            if a.upper + 1 >= bound:  # part2 is linked, so it costs at least 1
                continue
            b = self.solve(*map(_sorted, pair(part2)))
            total = a.upper + b.upper
            if total < bound:
                best = KkopNode(SPLIT, L, R, total, 0, (a, b), note=note)
                if total == 1:  # a linked state never goes below 1
                    break
        assert best is not None
        return best

    def _splits(self, L: Side, R: Side) -> Iterator[tuple[bool, Side, Side, str]]:
        seen = set()

        def emit(is_left: bool, p1: Side, p2: Side, note: str):
            k = (is_left, _sorted(p1), _sorted(p2))
            if k in seen or not p1 or not p2:
                return None
            seen.add(k)
            return is_left, k[1], k[2], note

        # independent groups first: usually the best split, and it makes pruning bite early
        group = _cross_group(self.ctx, L, R)
        if len(group) < len(L):
            s = emit(True, group, _minus(L, group), "independent groups")
            if s:
                yield s
        for is_left, side in ((True, L), (False, R)):
            if len(side) > 1:
                for p in side:
                    s = emit(is_left, (p,), _minus(side, (p,)), f"peel {p.label()}")
                    if s:
                        yield s
        for is_left, side in ((True, L), (False, R)):
            for p in side:
                if p.width < 2:
                    continue
                cs = [w.center for w in p.fundamentals()]
                rest = _minus(side, (p,))
                for k, c in enumerate(cs):
                    pieces = [x for x in (_string(p.node, cs[:k]), _string(p.node, cs[k + 1:])) if x]
                    s = emit(is_left, (KRFactor(p.node, c, 1),), rest + tuple(pieces), f"peel {p.node}_{c} from {p.label()}")
                    if s:
                        yield s
        for is_left, side in ((True, L), (False, R)):
            comps = _components(self.ctx, side)
            if len(comps) > 1:
                for comp in comps:
                    s = emit(is_left, comp, _minus(side, comp), "component split")
                    if s:
                        yield s


def _lower_of(node: KkopNode) -> int:
    return int(node.upper) if node.rule in EXACT_RULES else 0


def bound_sides(ctx: CartanContext, left: Iterable[KRFactor], right: Iterable[KRFactor],
                budget: int = DEFAULT_BUDGET) -> KkopBound:
    """Bound the KKOP invariant of the modules of two pseudo factorizations."""
    L, R = _sorted(left), _sorted(right)
    for f in L + R:
        ctx.check_node(f.node)
    if not L or not R:
        raise KkopError("both sides must be nonempty")
    engine = _Engine(ctx, budget)
    try:
        node = engine.solve(L, R)
    except _Exhausted:
        node = KkopNode(EXHAUSTED, L, R, INF, 0, note=f"budget of {budget} states exhausted")
        return KkopBound(0, INF, node, engine.misses)
    if (node.left, node.right) != (L, R):
        node = KkopNode(node.rule, L, R, node.upper, node.lower, node.children, node.adopted, node.note)
    return KkopBound(_lower_of(node), node.upper, node, engine.misses)


def bound(G: QFGraph, H, K, budget: int = DEFAULT_BUDGET) -> KkopBound:
    """Bound the KKOP invariant of the modules of two disjoint subgraphs."""
    h, k = G.check_ids(H), G.check_ids(K)
    if h & k:
        raise KkopError("subgraphs overlap")
    if not h or not k:
        raise KkopError("subgraphs must be nonempty")
    L, R = _sorted(G.factors_of(h)), _sorted(G.factors_of(k))
    if not G.is_linked(h, k):
        # dissociate subgraphs of the same graph give a simple tensor product
        node = KkopNode(DISSOCIATE, L, R, 0, 0, note="no arrows between the subgraphs")
        return KkopBound(0, 0, node, 0)
    return bound_sides(G.ctx, L, R, budget)


# -- replay -----------------------------------------------------------------

def _fund_key(side: Iterable[KRFactor]) -> list[Fundamental]:
    return sorted(_fund(side))


def check_trace(ctx: CartanContext, node: KkopNode) -> list[str]:
    """Re-validate every rule side condition; returns a list of problems."""
    errs: list[str] = []
    L, R = node.left, node.right
    where = f"{node.rule} at ({' '.join(f.label() for f in L)} | {' '.join(f.label() for f in R)})"
    if node.lower > node.upper:
        errs.append(f"{where}: lower exceeds upper")
    if node.lower and node.rule not in EXACT_RULES:
        errs.append(f"{where}: rule gives no lower bound")
    if node.rule == DISSOCIATE:
        # either expansion being unlinked is enough: both are pseudo
        # factorizations of the same pair of modules
        ok = not sides_linked(ctx, L, R) or not any(_kr_linked(ctx, p, q) for p in L for q in R)
        if not ok or node.upper != 0:
            errs.append(f"{where}: sides are linked")
    elif node.rule == FUNDAMENTAL:
        if not (len(L) == 1 == len(R) and L[0].width == 1 == R[0].width):
            errs.append(f"{where}: sides are not single fundamentals")
        elif node.upper != fundamental_d(ctx, L[0].fundamentals()[0], R[0].fundamentals()[0]):
            errs.append(f"{where}: wrong value")
    elif node.rule == NAOI:
        if not (naoi_applies(ctx, L, R) or naoi_applies(ctx, R, L)) or node.upper != 1:
            errs.append(f"{where}: chain condition fails")
    elif node.rule == SNAKE:
        if not snake_pair_applies(ctx, L, R) or node.upper != 1:
            errs.append(f"{where}: union is not totally ordered")
    elif node.rule == SPLIT:
        errs.extend(_check_split(node, where))
        if node.upper != sum(c.upper for c in node.children):
            errs.append(f"{where}: upper is not the sum of the parts")
    elif node.rule == EXHAUSTED:
        if node.upper != INF:
            errs.append(f"{where}: exhausted search must report no bound")
    else:
        errs.append(f"unknown rule {node.rule!r}")
    for c in node.children:
        errs.extend(check_trace(ctx, c))
    return errs


def _kr_linked(ctx: CartanContext, p: KRFactor, q: KRFactor) -> bool:
    return arrow_between(ctx, p, q) is not None


def _check_split(node: KkopNode, where: str) -> list[str]:
    if len(node.children) != 2:
        return [f"{where}: a split needs two parts"]
    a, b = node.children
    for keep, split in ((node.left, node.right), (node.right, node.left)):
        rest = []
        for c in (a, b):
            if c.left == keep:
                rest.append(c.right)
            elif c.right == keep:
                rest.append(c.left)
            else:
                break
        else:
            if _fund_key(rest[0] + rest[1]) == _fund_key(split):
                return []
    return [f"{where}: parts do not split one side"]


def replay_trace(ctx: CartanContext, node: KkopNode) -> bool:
    return not check_trace(ctx, node)


def format_trace(node: KkopNode, indent: str = "") -> str:
    sides = f"{' '.join(f.label() for f in node.left)} | {' '.join(f.label() for f in node.right)}"
    up = "inf" if node.upper == INF else str(node.upper)
    flag = " [adopted rule]" if node.adopted else ""
    note = f" ({node.note})" if node.note else ""
    lines = [f"{indent}{node.rule}: d({sides}) <= {up}{flag}{note}"]
    for c in node.children:
        lines.append(format_trace(c, indent + "  "))
    return "\n".join(lines)
