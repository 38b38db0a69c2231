"""Independent re-validation of certificates against their graph.

Nothing here trusts the search: every rule's side condition is recomputed.
Ledger facts are assumptions, so replay checks only that each cited fact
states exactly what the step needs.
"""
from __future__ import annotations

from typing import Optional

from ..graph import QFGraph
from ..primality import is_prime_snake
from .certificates import (
    REAL_CHAIN, REAL_KR, REAL_LEDGER, REAL_SNAKE, GtreeChain, Quochain, RdsCertificate, RealProof,
)
from .ledger import AssumptionLedger
from .rds import check_hlw, check_simple, popcount


def _label(G: QFGraph, m: int) -> str:
    return G.describe(m)


def check_real(G: QFGraph, p: RealProof, mask: int) -> list[str]:
    if p.mask != mask:
        return [f"reality proof is for {_label(G, p.mask)}, expected {_label(G, mask)}"]
    if p.kind == REAL_KR:
        return [] if popcount(mask) == 1 else [f"{_label(G, mask)} is not a single KR vertex"]
    if p.kind == REAL_SNAKE:
        return [] if is_prime_snake(G.poly(mask)) else [f"{_label(G, mask)} is not a prime snake"]
    if p.kind == REAL_LEDGER:
        f = p.fact
        if f is None or f.kind != "real" or AssumptionLedger([f]).real(G.poly(mask)) is None:
            return [f"ledger fact does not state reality of {_label(G, mask)}"]
        return []
    if p.kind == REAL_CHAIN:
        if p.chain is None:
            return ["missing chain"]
        return check_chain(G, p.chain, mask)
    return [f"unknown reality proof {p.kind!r}"]


def check_rds_certificate(G: QFGraph, c: RdsCertificate) -> list[str]:
    S, H = c.within, c.part
    where = f"rds {_label(G, H)} in {_label(G, S)}"
    if not H or H & ~S:
        return [f"{where}: part is not inside the ambient graph"]
    if H == S:
        if popcount(S) == 1 and c.hlw is None and c.simple is None:
            return check_real(G, c.part_real, H)
        return [f"{where}: only a single vertex is an rds of itself"]
    errs = [f"{where}: {e}" for e in check_real(G, c.part_real, H)]
    if c.rest_real is not None:
        errs += [f"{where}: {e}" for e in check_real(G, c.rest_real, S & ~H)]
    if c.hlw is None:
        errs.append(f"{where}: missing highest-l-weight condition")
    else:
        e = check_hlw(G, S, H, c.hlw)
        if e:
            errs.append(f"{where}: highest-l-weight: {e}")
    if c.simple is None:
        errs.append(f"{where}: missing simplicity condition")
    else:
        e = check_simple(G, S, H, c.simple)
        if e:
            errs.append(f"{where}: simplicity: {e}")
    return errs


def check_quochain(G: QFGraph, q: Quochain, within: Optional[int] = None) -> list[str]:
    S = q.within if within is None else within
    if q.within != S:
        return [f"chain covers {_label(G, q.within)}, expected {_label(G, S)}"]
    errs: list[str] = []
    left = S
    for step in q.steps:
        if step.within != left:
            errs.append(f"step for {_label(G, step.part)} is stated in the wrong ambient graph")
            break
        errs += check_rds_certificate(G, step)
        left &= ~step.part
    else:
        errs += check_real(G, q.terminal, left)
    return errs


def check_gtree(G: QFGraph, g: GtreeChain, within: Optional[int] = None) -> list[str]:
    S = g.within if within is None else within
    if g.within != S:
        return ["G-tree chain covers the wrong graph"]
    parts = list(g.parts)
    try:
        if not G.is_gtree(parts, S):
            return ["multicut is not a G-tree"]
    except ValueError as e:
        return [str(e)]
    errs = []
    ends = {v for a in G.cut_set(parts, S) for v in a}
    base_ids = {v for v, _ in g.bases}
    for v in ends:
        if v not in base_ids:
            errs.append(f"cut endpoint {_label(G, 1 << v)} has no base chain")
    for v, q in g.bases:
        P = next((p for p in parts if p >> v & 1), None)
        if P is None:
            errs.append("base vertex outside the multicut")
            continue
        if q.terminal.mask != 1 << v:
            errs.append(f"base chain for {_label(G, 1 << v)} does not end there")
        errs += check_quochain(G, q, P)
    if len(g.chosen) != len(parts):
        return errs + ["one chosen base per part is required"]
    for k, (P, v) in enumerate(zip(parts, g.chosen)):
        if not P >> v & 1 or v not in base_ids:
            errs.append(f"chosen base of part {k + 1} is not a base vertex of it")
            continue
        later = 0
        for Q in parts[k + 1:]:
            later |= Q
        if k < len(parts) - 1:
            if len(G.arrows_between(P, later)) != 1:
                errs.append(f"part {k + 1} is not a leaf of what remains")
            elif not G.neighbours(v, later):
                errs.append(f"chosen base of part {k + 1} does not link it to later parts")
        elif len(parts) > 1 and v not in ends:
            errs.append("last chosen base is not a cut endpoint")
    return errs


def check_chain(G: QFGraph, c, within: Optional[int] = None) -> list[str]:
    if isinstance(c, GtreeChain):
        return check_gtree(G, c, within)
    return check_quochain(G, c, within)


def replay(G: QFGraph, c) -> bool:
    if isinstance(c, RdsCertificate):
        return not check_rds_certificate(G, c)
    return not check_chain(G, c)
