"""Immutable certificate values produced by the certifier.

Subgraphs are stored as vertex-id bitmasks of the top-level graph, so every
certificate is meaningful only together with the graph it was built for.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from ..graph import bits
from ..kkop import KkopNode
from .ledger import Fact


class Status(Enum):
    STRONGLY_REAL = "StronglyReal"
    REAL_CERTIFIED = "RealCertified"
    CONDITIONAL = "Conditional"
    INCONCLUSIVE = "Inconclusive"


# how a subgraph is known to be real
REAL_KR = "kr"
REAL_SNAKE = "prime-snake"
REAL_LEDGER = "ledger"
REAL_CHAIN = "chain"

# highest-l-weight rules: which tensor order is cyclic on the top vector
HLW_TOP = "top"
HLW_BOTTOM = "bottom"
HLW_SEQUENCED = "sequenced"
HLW_LEDGER = "ledger"

# simplicity rules for the product of the part with its scope
SIMPLE_DISSOCIATE = "dissociate"
SIMPLE_VALENCE = "valence"
SIMPLE_SNAKE_ADJ = "prime-snake-adjacency"
SIMPLE_SNAKE_SCOPE = "prime-snake-scope"
SIMPLE_KKOP = "kkop"
SIMPLE_LEDGER = "ledger-simple"
SIMPLE_LEDGER_KKOP = "ledger-kkop"


@dataclass(frozen=True)
class RealProof:
    kind: str
    mask: int
    fact: Optional[Fact] = None
    chain: Optional["Quochain"] = None

    @property
    def conditional(self) -> bool:
        if self.kind == REAL_LEDGER:
            return True
        return self.chain is not None and self.chain.conditional


@dataclass(frozen=True)
class HlwProof:
    """Highest-l-weight proof: ``first`` names which side comes first in the
    highest-l-weight product ("part" or "rest").

    The sequenced rule splits the side named by ``split`` into its vertices,
    listed in ``order``.
    """
    rule: str
    first: str
    split: Optional[str] = None
    order: tuple[int, ...] = ()
    fact: Optional[Fact] = None


@dataclass(frozen=True)
class SimpleProof:
    rule: str
    scope: int
    trace: Optional[KkopNode] = None
    fact: Optional[Fact] = None


@dataclass(frozen=True)
class RdsCertificate:
    within: int
    part: int
    part_real: RealProof
    hlw: Optional[HlwProof]
    simple: Optional[SimpleProof]
    rest_real: Optional[RealProof] = None

    @property
    def rest(self) -> int:
        return self.within & ~self.part

    @property
    def conditional(self) -> bool:
        return (self.part_real.conditional
                or (self.rest_real is not None and self.rest_real.conditional)
                or (self.hlw is not None and self.hlw.rule == HLW_LEDGER)
                or (self.simple is not None and self.simple.rule in (SIMPLE_LEDGER, SIMPLE_LEDGER_KKOP)))


@dataclass(frozen=True)
class Quochain:
    """A weak rds-quochain: each step is an rds of what is left, and the
    terminal part is real."""
    within: int
    steps: tuple[RdsCertificate, ...]
    terminal: RealProof
    via: str = "search"

    @property
    def parts(self) -> list[int]:
        return [s.part for s in self.steps] + [self.terminal.mask]

    @property
    def length(self) -> int:
        return len(self.steps) + 1

    @property
    def strong(self) -> bool:
        return all(p & (p - 1) == 0 for p in self.parts)

    @property
    def conditional(self) -> bool:
        return self.terminal.conditional or any(s.conditional for s in self.steps)

    @property
    def terminal_vertex(self) -> Optional[int]:
        m = self.terminal.mask
        return bits(m)[0] if m & (m - 1) == 0 else None


@dataclass(frozen=True)
class GtreeChain:
    """Concatenated quochain justified by composition along a tree-shaped multicut.

    ``parts`` is the multicut in leaf order; ``bases`` maps each endpoint of
    a cut arrow to a quochain of its part ending at that vertex; ``chosen``
    lists the endpoint used for each part.
    """
    within: int
    parts: tuple[int, ...]
    bases: tuple[tuple[int, Quochain], ...]
    chosen: tuple[int, ...]
    via: str = "gtree"

    def base(self, v: int) -> Quochain:
        for u, q in self.bases:
            if u == v:
                return q
        raise KeyError(v)

    @property
    def sequence(self) -> list[int]:
        out = []
        for v in self.chosen:
            out.extend(self.base(v).parts)
        return out

    @property
    def length(self) -> int:
        return len(self.sequence)

    @property
    def strong(self) -> bool:
        return all(self.base(v).strong for v in self.chosen)

    @property
    def conditional(self) -> bool:
        return any(q.conditional for _, q in self.bases)


Chain = Union[Quochain, GtreeChain]


def chain_parts(c: Chain) -> list[int]:
    return c.sequence if isinstance(c, GtreeChain) else c.parts


@dataclass(frozen=True)
class RealityIndex:
    q_lower: int
    r_upper: int
    status: Status

    def __post_init__(self) -> None:
        if self.q_lower < 0 or self.r_upper < 0:
            raise ValueError("index values must be nonnegative")


@dataclass(frozen=True)
class Certified:
    certificate: RdsCertificate
    verdict = "Certified"


@dataclass(frozen=True)
class Inconclusive:
    reason: str = ""
    verdict = "Inconclusive"


@dataclass(frozen=True)
class Refuted:
    reason: str
    witness: Optional["RestrictionWitness"] = None
    verdict = "Refuted"


@dataclass(frozen=True)
class RestrictionWitness:
    lo: int
    hi: int
    explanation: str = ""


RdsVerdict = Union[Certified, Inconclusive, Refuted]


@dataclass(frozen=True)
class CertifyResult:
    chain: Optional[Chain]
    index: RealityIndex
    explored: int = 0
    notes: tuple[str, ...] = field(default=())
    unconditional: Optional[Chain] = None  # ledger-free chain, when it differs from ``chain``

    @property
    def status(self) -> Status:
        return self.index.status
