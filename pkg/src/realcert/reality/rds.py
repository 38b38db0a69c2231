"""Local rules for the three rds conditions and the restriction refuter.

Everything here works inside an ambient subgraph ``S`` (a bitmask of the
top-level graph) with a candidate part ``H`` and its complement ``S - H``.
"""
from __future__ import annotations

from typing import Optional

from ..cartan import Subdiagram
from ..drinfeld import DrinfeldPoly, KRFactor, q_factorize
from ..graph import Extremality, QFGraph, bits
from ..kkop import bound as kkop_bound, check_trace
from ..primality import is_prime_snake
from ..redsets import Direction, arrow_between
from .certificates import (
    HLW_BOTTOM, HLW_LEDGER, HLW_SEQUENCED, HLW_TOP, SIMPLE_DISSOCIATE, SIMPLE_KKOP,
    SIMPLE_LEDGER, SIMPLE_LEDGER_KKOP, SIMPLE_SNAKE_ADJ, SIMPLE_SNAKE_SCOPE, SIMPLE_VALENCE,
    HlwProof, RestrictionWitness, SimpleProof,
)
from .ledger import AssumptionLedger

KKOP_INNER_BUDGET = 5_000


def popcount(m: int) -> int:
    return bin(m).count("1")


def scope_of(G: QFGraph, S: int, H: int) -> int:
    """Union of the components of ``S`` that meet ``H``."""
    out = 0
    for c in G.component_masks(S):
        if c & H:
            out |= c
    return out


def is_kr_poly(pi: DrinfeldPoly) -> bool:
    """True for 1 and for a single q-string."""
    ws = pi.weights
    if len(ws) <= 1:
        return True
    return len({w.node for w in ws}) == 1 and all(b.center - a.center == 2 for a, b in zip(ws, ws[1:]))


def _divides_simply(G: QFGraph, y: int, X: int) -> bool:
    """V(pi_X) (x) V(y) is simple when y divides pi_X and either the quotient
    is a KR polynomial or pi_X is a prime snake."""
    piX = G.poly(X)
    piy = G.poly(1 << y)
    if not piy.divides(piX):
        return False
    return is_kr_poly(piX.quotient(piy)) or is_prime_snake(piX)


def topological(G: QFGraph, Y: int) -> tuple[int, ...]:
    """Vertices of ``Y`` with every arrow pointing forward (sources first)."""
    return tuple(sorted(bits(Y), key=lambda v: (-G.factor(v).center, v)))


def sequenced_ok(G: QFGraph, X: int, Y: int, x_first: bool) -> bool:
    """V(pi_X) (x) V(pi_Y) (or the reverse order) is highest-l-weight by
    splitting Y into its vertices in topological order."""
    for y in bits(Y):
        # x_first: an arrow y -> x would break V(X) (x) V(y); reversed otherwise
        bad = (G.succ[y] if x_first else G.pred[y]) & X
        if bad and not _divides_simply(G, y, X):
            return False
    return True


def hlw_proof(G: QFGraph, S: int, H: int, ledger: Optional[AssumptionLedger] = None) -> Optional[HlwProof]:
    R = S & ~H
    ext = G.is_extremal(H, S)
    if ext is Extremality.TOP:
        return HlwProof(HLW_TOP, "part")
    if ext is Extremality.BOTTOM:
        return HlwProof(HLW_BOTTOM, "rest")
    for split, X, Y in (("rest", H, R), ("part", R, H)):
        xname = "part" if split == "rest" else "rest"
        yname = split
        if sequenced_ok(G, X, Y, True):
            return HlwProof(HLW_SEQUENCED, xname, split, topological(G, Y))
        if sequenced_ok(G, X, Y, False):
            return HlwProof(HLW_SEQUENCED, yname, split, topological(G, Y))
    if ledger:
        pH, pR = G.poly(H), G.poly(R)
        f = ledger.hlw(pH, pR)
        if f is not None:
            return HlwProof(HLW_LEDGER, "part", fact=f)
        f = ledger.hlw(pR, pH)
        if f is not None:
            return HlwProof(HLW_LEDGER, "rest", fact=f)
    return None


def check_hlw(G: QFGraph, S: int, H: int, p: HlwProof) -> Optional[str]:
    R = S & ~H
    if p.first not in ("part", "rest"):
        return f"bad side {p.first!r}"
    if p.rule == HLW_TOP:
        ok = p.first == "part" and G.is_extremal(H, S) is Extremality.TOP
        return None if ok else "part is not a top subgraph"
    if p.rule == HLW_BOTTOM:
        ok = p.first == "rest" and not any(G.succ[v] & R for v in bits(H))
        return None if ok else "part is not a bottom subgraph"
    if p.rule == HLW_SEQUENCED:
        if p.split not in ("part", "rest"):
            return "sequenced rule needs a split side"
        Y = H if p.split == "part" else R
        X = S & ~Y
        if sorted(p.order) != bits(Y):
            return "order does not list the split side"
        pos = {v: k for k, v in enumerate(p.order)}
        for t, h in G.arrows_within(Y):
            if pos[t] > pos[h]:
                return "split side is not listed in topological order"
        if not sequenced_ok(G, X, Y, p.first != p.split):
            return "some split vertex fails the pairwise condition"
        return None
    if p.rule == HLW_LEDGER:
        first, second = (H, R) if p.first == "part" else (R, H)
        f = p.fact
        if f is None or f.kind != "hlw":
            return "missing hlw fact"
        if AssumptionLedger([f]).hlw(G.poly(first), G.poly(second)) is None:
            return "hlw fact does not match the cut"
        return None
    return f"unknown hlw rule {p.rule!r}"


def simple_proof(G: QFGraph, S: int, H: int, ledger: Optional[AssumptionLedger] = None,
                 kkop_budget: int = KKOP_INNER_BUDGET) -> Optional[SimpleProof]:
    """Simplicity proof, assuming ``H`` is real and the highest-l-weight condition holds in ``S``."""
    scope = scope_of(G, S, H)
    if scope == H:
        return SimpleProof(SIMPLE_DISSOCIATE, scope)
    single = H & (H - 1) == 0
    if single:
        v = bits(H)[0]
        info = G.classify_vertex(v, S)
        if info.valence <= 1:
            return SimpleProof(SIMPLE_VALENCE, scope)
        if G.is_extremal(H, S) is not Extremality.NO and is_prime_snake(G.poly(info.adjacency)):
            return SimpleProof(SIMPLE_SNAKE_ADJ, scope)
        if is_prime_snake(G.poly(scope)):
            return SimpleProof(SIMPLE_SNAKE_SCOPE, scope)
    b = kkop_bound(G, H, scope & ~H, kkop_budget)
    if b.upper <= 1:
        return SimpleProof(SIMPLE_KKOP, scope, trace=b.trace)
    if ledger:
        pH = G.poly(H)
        for amb in (S, scope):
            f = ledger.simple(G.poly(amb), pH)
            if f is not None:
                return SimpleProof(SIMPLE_LEDGER, amb, fact=f)
        for amb in (S, scope):
            f = ledger.kkop_le(pH, G.poly(amb & ~H), 1)
            if f is not None:
                return SimpleProof(SIMPLE_LEDGER_KKOP, amb, fact=f)
    return None


def _same_fundamentals(side, G: QFGraph, mask: int) -> bool:
    got = sorted(w for f in side for w in f.fundamentals())
    want = sorted(w for f in G.factors_of(mask) for w in f.fundamentals())
    return got == want


def check_simple(G: QFGraph, S: int, H: int, p: SimpleProof) -> Optional[str]:
    scope = p.scope
    if scope & ~S or H & ~scope:
        return "scope is not between the part and the ambient graph"
    if p.rule in (SIMPLE_DISSOCIATE, SIMPLE_VALENCE, SIMPLE_SNAKE_ADJ, SIMPLE_SNAKE_SCOPE, SIMPLE_KKOP):
        if scope != scope_of(G, S, H):
            return "scope is not the union of components meeting the part"
    single = H & (H - 1) == 0
    if p.rule == SIMPLE_DISSOCIATE:
        return None if not G.is_linked(H, S & ~H) else "part is linked to the rest"
    if p.rule == SIMPLE_VALENCE:
        ok = single and G.classify_vertex(bits(H)[0], S).valence <= 1
        return None if ok else "part is not a vertex of valence at most 1"
    if p.rule == SIMPLE_SNAKE_ADJ:
        if not single or G.is_extremal(H, S) is Extremality.NO:
            return "part is not an extremal vertex"
        adj = G.classify_vertex(bits(H)[0], S).adjacency
        return None if is_prime_snake(G.poly(adj)) else "adjacency subgraph is not a prime snake"
    if p.rule == SIMPLE_SNAKE_SCOPE:
        ok = single and is_prime_snake(G.poly(scope))
        return None if ok else "component is not a prime snake containing the vertex"
    if p.rule == SIMPLE_KKOP:
        t = p.trace
        if t is None:
            return "missing KKOP trace"
        if t.upper > 1:
            return "KKOP bound exceeds 1"
        sides_ok = ((_same_fundamentals(t.left, G, H) and _same_fundamentals(t.right, G, scope & ~H))
                    or (_same_fundamentals(t.right, G, H) and _same_fundamentals(t.left, G, scope & ~H)))
        if not sides_ok:
            return "KKOP trace is about a different pair"
        errs = check_trace(G.ctx, t)
        return errs[0] if errs else None
    if p.rule == SIMPLE_LEDGER:
        f = p.fact
        if f is None or AssumptionLedger([f]).simple(G.poly(scope), G.poly(H)) is None:
            return "simple fact does not match"
        return None
    if p.rule == SIMPLE_LEDGER_KKOP:
        f = p.fact
        if f is None or AssumptionLedger([f]).kkop_le(G.poly(H), G.poly(scope & ~H), 1) is None:
            return "KKOP fact does not match"
        return None
    return f"unknown simplicity rule {p.rule!r}"


# -- refutation by restriction to a subdiagram -------------------------------

def _restricted_factors(pi: DrinfeldPoly, J: Subdiagram) -> Optional[list[KRFactor]]:
    """q-factors of the restriction, if they pairwise commute inside J."""
    local = pi.restrict(J)
    fs = list(q_factorize(local).factors)
    for a in range(len(fs)):
        for b in range(a + 1, len(fs)):
            if arrow_between(local.ctx, fs[a], fs[b]) is not None:
                return None
    return fs


def _arrow(ctx, v: KRFactor, w: KRFactor) -> bool:
    return arrow_between(ctx, v, w) is Direction.FORWARD


def refute_hlw_by_restriction(G: QFGraph, H, within=None) -> Optional[RestrictionWitness]:
    """Look for an interval J on which neither tensor order of the cut can be
    highest-l-weight.

    On J each side restricts to a tensor product of commuting KR modules.  If
    one side is a single KR module ``a``, any factor ``b`` of the other side
    can be moved next to it, and a reducible pair in the wrong orientation
    then rules that order out.
    """
    S = G.full if within is None else G.check_ids(within)
    h = G.check_ids(H)
    if not h or h & ~S or h == S:
        return None
    pH, pR = G.poly(h), G.poly(S & ~h)
    rank = G.ctx.rank
    intervals = sorted(((lo, hi) for lo in range(1, rank + 1) for hi in range(lo, rank + 1)),
                       key=lambda J: (J[1] - J[0], J[0]))
    for lo, hi in intervals:
        J = Subdiagram(lo, hi)
        A = _restricted_factors(pH, J)
        B = _restricted_factors(pR, J)
        if not A or not B:
            continue
        ctx = pH.restrict(J).ctx
        p, q = len(A), len(B)
        # b -> a means V(a) (x) V(b) is reducible but not highest-l-weight
        into_A = any(_arrow(ctx, b, a) for a in A for b in B)
        into_B = any(_arrow(ctx, a, b) for a in A for b in B)
        fails_HR = (p == 1 or q == 1) and into_A
        fails_RH = (p == 1 or q == 1) and into_B
        if fails_HR and fails_RH:
            a = " ".join(f.label() for f in A)
            b = " ".join(f.label() for f in B)
            return RestrictionWitness(lo, hi, f"on [{lo},{hi}] the sides restrict to {a} and {b}; "
                                              "both tensor orders contain a reducible pair in the wrong orientation "
                                              "(nodes renumbered from 1)")
    return None
