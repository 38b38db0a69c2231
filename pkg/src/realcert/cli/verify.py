"""Re-validation of certificate files written by the CLI."""
from __future__ import annotations

from ..cartan import CartanContext
from ..kkop import check_trace
from ..primality import Factors, PrimalityError, prime_verdict, three_vertex_primality
from ..reality.certificates import Status
from ..reality.replay import check_chain
from .codec import CodecError, bound_from_json, primality_from_json, reality_from_json, side_from_json, trace_from_json


def _reality(doc: dict) -> list[str]:
    G, res = reality_from_json(doc)
    errs = []
    n = G.n
    best, unc = res.chain, res.unconditional
    if unc is None and best is not None and not best.conditional:
        unc = best
    for label, c in (("chain", best), ("unconditional chain", res.unconditional)):
        if c is not None:
            errs += [f"{label}: {e}" for e in check_chain(G, c)]
    if unc is not None and unc.conditional:
        errs.append("unconditional chain cites ledger facts")
    q = best.length if best is not None else 0
    if res.index.q_lower != q:
        errs.append(f"claimed q_lower {res.index.q_lower} but the chain has length {q}")
    if res.index.r_upper != n - res.index.q_lower:
        errs.append("r_upper is not the vertex count minus q_lower")
    st = res.status
    if st is Status.STRONGLY_REAL and (unc is None or unc.length != n):
        errs.append("StronglyReal needs a ledger-free chain through every vertex")
    elif st is Status.REAL_CERTIFIED and unc is None:
        errs.append("RealCertified needs a ledger-free chain")
    elif st is Status.CONDITIONAL and best is None:
        errs.append("Conditional needs a chain")
    elif st is Status.INCONCLUSIVE and unc is not None:
        errs.append("a ledger-free chain contradicts Inconclusive")
    return errs


def _kkop(doc: dict) -> list[str]:
    ctx = CartanContext(doc["rank"])
    L = tuple(sorted(side_from_json(ctx, doc["left"])))
    R = tuple(sorted(side_from_json(ctx, doc["right"])))
    tr = trace_from_json(ctx, doc["trace"])
    errs = check_trace(ctx, tr)
    if (tuple(sorted(tr.left)), tuple(sorted(tr.right))) != (L, R):
        errs.append("trace root does not bound the stated pair")
    if tr.upper != bound_from_json(doc["upper"]):
        errs.append("stated upper bound differs from the trace")
    if doc["lower"] > tr.lower:
        errs.append("stated lower bound is not justified by the trace")
    return errs


def _primality(doc: dict) -> list[str]:
    G, method, v = primality_from_json(doc)
    errs = []
    if isinstance(v, Factors) and v.factor * v.cofactor != G.poly():
        errs.append("factors do not multiply back to the polynomial")
    try:
        again = three_vertex_primality(G) if method == "prime3" else prime_verdict(G)
    except PrimalityError as e:
        return errs + [str(e)]
    if again.kind != v.kind:
        errs.append(f"recomputed verdict is {again.kind}, certificate says {v.kind}")
    elif isinstance(v, Factors) and (again.factor, again.cofactor) != (v.factor, v.cofactor):
        errs.append("recomputed factorization differs")
    return errs


def verify_document(doc: dict) -> list[str]:
    kind = doc.get("kind")
    try:
        if kind == "reality":
            return _reality(doc)
        if kind == "kkop":
            return _kkop(doc)
        if kind == "primality":
            return _primality(doc)
    except CodecError as e:
        return [str(e)]
    except (KeyError, TypeError, ValueError) as e:
        return [f"malformed certificate: {e}"]
    return [f"unknown certificate kind {kind!r}"]
