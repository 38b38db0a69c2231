"""Text grammar for (pseudo) factorizations.

    A<rank>; i:a  i:a:r  i:a:rxM ...

``i:a`` is the fundamental weight of node i at center a, ``i:a:r`` the KR
factor of width r, and an ``xM`` suffix repeats a token M times.  ``A3;``
alone is the empty product.
"""
from __future__ import annotations

import re
from collections import Counter
from typing import Iterable, Optional

from ..cartan import CartanContext, CartanError
from ..drinfeld import DrinfeldPoly, KRFactor, PseudoFactorization

HEADER = re.compile(r"\s*A(\d+)\s*;")
TOKEN = re.compile(r"^(\d+):(-?\d+)(?::(\d+))?(?:x(\d+))?$")


class SpecError(ValueError):
    def __init__(self, msg: str, text: str = "", pos: Optional[int] = None):
        self.pos = pos
        if pos is not None and text:
            msg = f"{msg} at column {pos + 1}\n  {text}\n  {' ' * pos}^"
        super().__init__(msg)


def _tokens(body: str, offset: int):
    for m in re.finditer(r"\S+", body):
        yield m.group(), offset + m.start()


def parse_factors(body: str, ctx: CartanContext, text: str = "", offset: int = 0) -> list[KRFactor]:
    out = []
    for tok, pos in _tokens(body, offset):
        m = TOKEN.match(tok)
        if not m:
            raise SpecError(f"bad factor token {tok!r}", text or body, pos)
        i, a = int(m.group(1)), int(m.group(2))
        r = int(m.group(3)) if m.group(3) else 1
        mult = int(m.group(4)) if m.group(4) else 1
        if r < 1 or mult < 1:
            raise SpecError(f"width and multiplicity must be positive in {tok!r}", text or body, pos)
        try:
            ctx.check_node(i)
        except CartanError as e:
            raise SpecError(str(e), text or body, pos) from None
        out.extend([KRFactor(i, a, r)] * mult)
    return out


def parse(text: str, rank: Optional[int] = None) -> PseudoFactorization:
    """Parse a spec; ``rank`` supplies the context when the header is omitted."""
    m = HEADER.match(text)
    if m:
        if int(m.group(1)) < 1:
            raise SpecError("rank must be positive", text, m.start(1))
        ctx = CartanContext(int(m.group(1)))
        body, offset = text[m.end():], m.end()
    elif rank is not None:
        ctx, body, offset = CartanContext(rank), text, 0
    else:
        raise SpecError("expected header 'A<rank>;'", text, len(text) - len(text.lstrip()))
    return PseudoFactorization(ctx, tuple(parse_factors(body, ctx, text, offset)))


def parse_poly(text: str, rank: Optional[int] = None) -> DrinfeldPoly:
    return parse(text, rank).poly()


def token(f: KRFactor) -> str:
    return f"{f.node}:{f.center}" + (f":{f.width}" if f.width != 1 else "")


def format_factors(factors: Iterable[KRFactor]) -> str:
    counts = Counter(factors)
    parts = []
    for f in sorted(counts):
        m = counts[f]
        parts.append(token(f) + (f"x{m}" if m > 1 else ""))
    return " ".join(parts)


def format_spec(f: PseudoFactorization) -> str:
    body = format_factors(f.factors)
    return f"A{f.ctx.rank};" + (f" {body}" if body else "")


def format_poly(pi: DrinfeldPoly) -> str:
    return format_spec(PseudoFactorization(pi.ctx, tuple(w.as_factor() for w in pi.weights)))
