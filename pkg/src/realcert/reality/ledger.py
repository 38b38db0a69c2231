"""Assumption ledger: facts about simple modules that the automated rules
cannot derive, each carried with a free-form provenance note.

Facts are matched up to a uniform shift of centers, since shifting all
spectral parameters is an automorphism that preserves every property the
ledger can state.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from ..drinfeld import DrinfeldPoly

KINDS = ("simple", "hlw", "kkop_le", "real")
BINARY = ("simple", "hlw", "kkop_le")


class LedgerError(ValueError):
    pass


def _shift_key(*polys: DrinfeldPoly) -> tuple:
    """Key of a tuple of polynomials modulo a common translation."""
    centers = [w.center for p in polys for w in p.weights]
    m = min(centers) if centers else 0
    return tuple(tuple((w.node, w.center - m) for w in p.weights) for p in polys)


@dataclass(frozen=True)
class Fact:
    kind: str
    left: DrinfeldPoly
    right: Optional[DrinfeldPoly] = None
    k: Optional[int] = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise LedgerError(f"unknown fact kind {self.kind!r}")
        if self.kind in BINARY and self.right is None:
            raise LedgerError(f"{self.kind} needs two operands")
        if self.kind == "real" and self.right is not None:
            raise LedgerError("real takes one operand")
        if self.kind == "kkop_le" and (self.k is None or self.k < 0):
            raise LedgerError("kkop_le needs a nonnegative bound k")
        if self.right is not None and self.right.ctx != self.left.ctx:
            raise LedgerError("operands live over different contexts")

    def describe(self) -> str:
        if self.kind == "real":
            return f"real({self.left})"
        extra = f", {self.k}" if self.kind == "kkop_le" else ""
        return f"{self.kind}({self.left}, {self.right}{extra})"


class AssumptionLedger:
    def __init__(self, facts: Iterable[Fact] = ()):
        self.facts: tuple[Fact, ...] = tuple(facts)
        ctxs = {f.left.ctx for f in self.facts}
        if len(ctxs) > 1:
            raise LedgerError("ledger facts live over different contexts")
        self._index: dict[tuple, Fact] = {}
        for f in self.facts:
            if f.kind == "real":
                self._index.setdefault(("real", _shift_key(f.left)), f)
            elif f.kind == "hlw":
                self._index.setdefault(("hlw", _shift_key(f.left, f.right)), f)
            else:
                # simplicity and KKOP bounds do not depend on the order
                for a, b in ((f.left, f.right), (f.right, f.left)):
                    self._index.setdefault((f.kind, _shift_key(a, b)), f)

    def __len__(self) -> int:
        return len(self.facts)

    def __iter__(self):
        return iter(self.facts)

    def __bool__(self) -> bool:
        return bool(self.facts)

    def real(self, pi: DrinfeldPoly) -> Optional[Fact]:
        return self._index.get(("real", _shift_key(pi)))

    def hlw(self, first: DrinfeldPoly, second: DrinfeldPoly) -> Optional[Fact]:
        return self._index.get(("hlw", _shift_key(first, second)))

    def simple(self, a: DrinfeldPoly, b: DrinfeldPoly) -> Optional[Fact]:
        return self._index.get(("simple", _shift_key(a, b)))

    def kkop_le(self, a: DrinfeldPoly, b: DrinfeldPoly, k: int) -> Optional[Fact]:
        f = self._index.get(("kkop_le", _shift_key(a, b)))
        return f if f is not None and f.k <= k else None

    def operands(self) -> list[DrinfeldPoly]:
        out = []
        for f in self.facts:
            out.append(f.left)
            if f.right is not None:
                out.append(f.right)
        return out


EMPTY = AssumptionLedger()
