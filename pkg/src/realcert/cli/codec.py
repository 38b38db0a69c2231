"""JSON encoding of graphs, ledger facts, KKOP traces and certificates.

Subgraphs are written as sorted lists of vertex ids of the enclosing graph;
polynomials as spec strings.  Every ``*_to_json`` has a matching decoder, and
``decode(encode(x)) == x`` for every certificate the engine produces.
"""
from __future__ import annotations

import json
from importlib import resources
from typing import Any, Optional

from ..cartan import CartanContext
from ..drinfeld import KRFactor
from ..graph import QFGraph, bits
from ..kkop import INF, KkopBound, KkopNode
from ..primality import Factors, Prime, PrimalityVerdict, Unknown
from ..reality.certificates import (
    CertifyResult, Chain, GtreeChain, HlwProof, Quochain, RdsCertificate, RealityIndex, RealProof,
    SimpleProof, Status,
)
from ..reality.ledger import AssumptionLedger, Fact, LedgerError
from .polyspec import SpecError, format_poly, parse_factors, parse_poly, token

FORMAT = "realcert"
VERSION = 1


class CodecError(ValueError):
    pass


# -- small pieces -------------------------------------------------------------

def ids(mask: int) -> list[int]:
    return bits(mask)


def mask(xs: list[int]) -> int:
    m = 0
    for v in xs:
        m |= 1 << v
    return m


def side_to_json(side) -> list[str]:
    return [token(f) for f in side]


def side_from_json(ctx: CartanContext, xs: list[str]) -> tuple[KRFactor, ...]:
    return tuple(parse_factors(" ".join(xs), ctx))


def graph_to_json(G: QFGraph) -> dict:
    return {"rank": G.ctx.rank, "factors": side_to_json(G.factors)}


def graph_from_json(d: dict) -> QFGraph:
    ctx = CartanContext(d["rank"])
    return QFGraph(ctx, side_from_json(ctx, d["factors"]))


def bound_to_json(x) -> Any:
    return "inf" if x == INF else int(x)


def bound_from_json(x):
    return INF if x == "inf" else int(x)


# -- ledger -------------------------------------------------------------------

def fact_to_json(f: Fact) -> dict:
    d: dict[str, Any] = {"kind": f.kind, "left": format_poly(f.left)}
    if f.right is not None:
        d["right"] = format_poly(f.right)
    if f.k is not None:
        d["k"] = f.k
    d["note"] = f.note
    return d


def fact_from_json(d: dict, rank: Optional[int] = None) -> Fact:
    if not isinstance(d, dict) or "kind" not in d or "left" not in d:
        raise LedgerError("a fact needs at least 'kind' and 'left'")
    unknown = set(d) - {"kind", "left", "right", "k", "note"}
    if unknown:
        raise LedgerError(f"unknown fact fields: {', '.join(sorted(unknown))}")
    try:
        left = parse_poly(d["left"], rank)
        right = parse_poly(d["right"], rank) if d.get("right") is not None else None
    except SpecError as e:
        raise LedgerError(f"bad polynomial in ledger: {e}") from None
    return Fact(d["kind"], left, right, d.get("k"), d.get("note", ""))


def ledger_from_json(data, rank: Optional[int] = None) -> AssumptionLedger:
    if not isinstance(data, list):
        raise LedgerError("a ledger file must hold a JSON array of facts")
    return AssumptionLedger(fact_from_json(d, rank) for d in data)


def load_ledger(path: str, rank: Optional[int] = None) -> AssumptionLedger:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise LedgerError(f"{path}: {e}") from None
    return ledger_from_json(data, rank)


# -- KKOP traces --------------------------------------------------------------

def trace_to_json(n: KkopNode) -> dict:
    d = {"rule": n.rule, "left": side_to_json(n.left), "right": side_to_json(n.right),
         "upper": bound_to_json(n.upper), "lower": n.lower}
    if n.adopted:
        d["adopted"] = True
    if n.note:
        d["note"] = n.note
    if n.children:
        d["children"] = [trace_to_json(c) for c in n.children]
    return d


def trace_from_json(ctx: CartanContext, d: dict) -> KkopNode:
    return KkopNode(d["rule"], side_from_json(ctx, d["left"]), side_from_json(ctx, d["right"]),
                    bound_from_json(d["upper"]), d.get("lower", 0),
                    tuple(trace_from_json(ctx, c) for c in d.get("children", ())),
                    d.get("adopted", False), d.get("note", ""))


def kkop_to_json(ctx: CartanContext, left, right, b: KkopBound) -> dict:
    return {"format": FORMAT, "version": VERSION, "kind": "kkop", "rank": ctx.rank,
            "left": side_to_json(left), "right": side_to_json(right),
            "lower": b.lower, "upper": bound_to_json(b.upper), "explored": b.explored,
            "trace": trace_to_json(b.trace)}


# -- reality certificates -------------------------------------------------------

def _opt_fact(d: dict, f: Optional[Fact]) -> dict:
    if f is not None:
        d["fact"] = fact_to_json(f)
    return d


def real_to_json(p: RealProof) -> dict:
    d = _opt_fact({"kind": p.kind, "vertices": ids(p.mask)}, p.fact)
    if p.chain is not None:
        d["chain"] = chain_to_json(p.chain)
    return d


def hlw_to_json(p: HlwProof) -> dict:
    d: dict[str, Any] = {"rule": p.rule, "first": p.first}
    if p.split is not None:
        d["split"] = p.split
        d["order"] = list(p.order)
    return _opt_fact(d, p.fact)


def simple_to_json(p: SimpleProof) -> dict:
    d: dict[str, Any] = {"rule": p.rule, "scope": ids(p.scope)}
    if p.trace is not None:
        d["trace"] = trace_to_json(p.trace)
    return _opt_fact(d, p.fact)


def rds_to_json(c: RdsCertificate) -> dict:
    d: dict[str, Any] = {"within": ids(c.within), "part": ids(c.part), "part_real": real_to_json(c.part_real),
                         "hlw": None if c.hlw is None else hlw_to_json(c.hlw),
                         "simple": None if c.simple is None else simple_to_json(c.simple)}
    if c.rest_real is not None:
        d["rest_real"] = real_to_json(c.rest_real)
    return d


def chain_to_json(c: Chain) -> dict:
    if isinstance(c, GtreeChain):
        return {"type": "gtree", "via": c.via, "within": ids(c.within), "parts": [ids(p) for p in c.parts],
                "bases": [{"vertex": v, "chain": chain_to_json(q)} for v, q in c.bases],
                "chosen": list(c.chosen)}
    return {"type": "quochain", "via": c.via, "within": ids(c.within),
            "steps": [rds_to_json(s) for s in c.steps], "terminal": real_to_json(c.terminal)}


class _Decoder:
    def __init__(self, ctx: CartanContext):
        self.ctx = ctx

    def fact(self, d: Optional[dict]) -> Optional[Fact]:
        return None if d is None else fact_from_json(d, self.ctx.rank)

    def real(self, d: dict) -> RealProof:
        chain = d.get("chain")
        return RealProof(d["kind"], mask(d["vertices"]), self.fact(d.get("fact")),
                         None if chain is None else self.chain(chain))

    def hlw(self, d: Optional[dict]) -> Optional[HlwProof]:
        if d is None:
            return None
        return HlwProof(d["rule"], d["first"], d.get("split"), tuple(d.get("order", ())), self.fact(d.get("fact")))

    def simple(self, d: Optional[dict]) -> Optional[SimpleProof]:
        if d is None:
            return None
        tr = d.get("trace")
        return SimpleProof(d["rule"], mask(d["scope"]), None if tr is None else trace_from_json(self.ctx, tr),
                           self.fact(d.get("fact")))

    def rds(self, d: dict) -> RdsCertificate:
        rest = d.get("rest_real")
        return RdsCertificate(mask(d["within"]), mask(d["part"]), self.real(d["part_real"]),
                              self.hlw(d.get("hlw")), self.simple(d.get("simple")),
                              None if rest is None else self.real(rest))

    def chain(self, d: dict) -> Chain:
        if d["type"] == "gtree":
            return GtreeChain(mask(d["within"]), tuple(mask(p) for p in d["parts"]),
                              tuple((b["vertex"], self.chain(b["chain"])) for b in d["bases"]),
                              tuple(d["chosen"]), d.get("via", "gtree"))
        if d["type"] != "quochain":
            raise CodecError(f"unknown chain type {d['type']!r}")
        return Quochain(mask(d["within"]), tuple(self.rds(s) for s in d["steps"]),
                        self.real(d["terminal"]), d.get("via", "search"))


def chain_from_json(ctx: CartanContext, d: dict) -> Chain:
    return _Decoder(ctx).chain(d)


def rds_from_json(ctx: CartanContext, d: dict) -> RdsCertificate:
    return _Decoder(ctx).rds(d)


def reality_to_json(G: QFGraph, res: CertifyResult, ledger: Optional[AssumptionLedger] = None) -> dict:
    d: dict[str, Any] = {
        "format": FORMAT, "version": VERSION, "kind": "reality", "graph": graph_to_json(G),
        "status": res.status.value,
        "index": {"q_lower": res.index.q_lower, "r_upper": res.index.r_upper},
        "chain": None if res.chain is None else chain_to_json(res.chain),
        "explored": res.explored, "notes": list(res.notes),
        "ledger": [fact_to_json(f) for f in (ledger or ())],
    }
    if res.unconditional is not None:
        d["unconditional"] = chain_to_json(res.unconditional)
    return d


def reality_from_json(d: dict) -> tuple[QFGraph, CertifyResult]:
    G = graph_from_json(d["graph"])
    dec = _Decoder(G.ctx)
    idx = d["index"]
    index = RealityIndex(idx["q_lower"], idx["r_upper"], Status(d["status"]))
    chain = None if d.get("chain") is None else dec.chain(d["chain"])
    unc = None if d.get("unconditional") is None else dec.chain(d["unconditional"])
    return G, CertifyResult(chain, index, d.get("explored", 0), tuple(d.get("notes", ())), unc)


# -- primality ----------------------------------------------------------------

def primality_to_json(G: QFGraph, method: str, v: PrimalityVerdict) -> dict:
    d: dict[str, Any] = {"format": FORMAT, "version": VERSION, "kind": "primality", "method": method,
                         "graph": graph_to_json(G), "verdict": v.kind, "justification": v.justification}
    if isinstance(v, Factors):
        d["factor"] = format_poly(v.factor)
        d["cofactor"] = format_poly(v.cofactor)
    return d


def primality_from_json(d: dict) -> tuple[QFGraph, str, PrimalityVerdict]:
    G = graph_from_json(d["graph"])
    kind = d["verdict"]
    if kind == "prime":
        v: PrimalityVerdict = Prime(d["justification"])
    elif kind == "factors":
        v = Factors(parse_poly(d["factor"], G.ctx.rank), parse_poly(d["cofactor"], G.ctx.rank), d["justification"])
    elif kind == "unknown":
        v = Unknown(d["justification"])
    else:
        raise CodecError(f"unknown primality verdict {kind!r}")
    return G, d["method"], v


# -- schema -------------------------------------------------------------------

def schema() -> dict:
    text = resources.files(__package__).joinpath("certificate.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
