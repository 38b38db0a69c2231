"""``realcert`` command-line front end.

Exit codes: 0 answered or certified, 2 inconclusive, 3 refuted or not
prime (and failed replays), 1 usage or internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from ..cartan import CartanContext, CartanError, Subdiagram
from ..drinfeld import KRFactor, PseudoFactorization
from ..graph import GraphError, QFGraph, build_graph, bits, fundamental_graph, qf_graph
from ..kkop import DEFAULT_BUDGET as KKOP_BUDGET, INF, SNAKE, KkopError, bound, format_trace
from ..primality import Factors, Prime, PrimalityError, prime_verdict, three_vertex_primality
from ..redsets import red_set_restricted
from ..reality import AssumptionLedger, certify_real
from ..reality.certificates import Status, chain_parts
from ..reality.ledger import LedgerError
from ..reality.search import DEFAULT_BUDGET
from ..reality.survey import DEFAULT_LIMIT, SurveyError, SurveyParams, survey
from . import codec
from .fixtures import resolve
from .polyspec import SpecError, format_factors, parse
from .verify import verify_document

OK, USAGE, INCONCLUSIVE, NEGATIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


# -- helpers ----------------------------------------------------------------

def _spec(text: str) -> PseudoFactorization:
    try:
        return parse(resolve(text))
    except KeyError as e:
        raise UsageError(e.args[0]) from None


def _graph(args) -> QFGraph:
    f = _spec(args.spec)
    if getattr(args, "fundamental", False):
        return fundamental_graph(f.poly())
    if getattr(args, "pseudo", False):
        return build_graph(f.ctx, f)
    return qf_graph(f.poly())


def normalized(G: QFGraph) -> list[KRFactor]:
    """Factors of G with each component shifted so its lowest center is 0."""
    out = list(G.factors)
    for comp in G.component_masks():
        m = min(G.factors[v].start for v in bits(comp))
        for v in bits(comp):
            out[v] = out[v].shifted(-m)
    return out


def _factor_list(G: QFGraph, normalize: bool) -> list[KRFactor]:
    return normalized(G) if normalize else list(G.factors)


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _ledger(args, rank: int) -> Optional[AssumptionLedger]:
    if not args.ledger:
        return None
    return codec.load_ledger(args.ledger, rank)


def _centers(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _nodes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated nodes, got {text!r}") from None


# -- subcommands --------------------------------------------------------------

def cmd_factorize(args) -> int:
    G = _graph(args)
    fs = _factor_list(G, args.normalize)
    print(f"A{G.ctx.rank};" + (" " + format_factors(fs) if fs else ""))
    return OK


def cmd_graph(args) -> int:
    G = _graph(args)
    # normalizing relabels each component; arrows stay those of the input
    labels = [f.label() for f in _factor_list(G, args.normalize)]
    if args.dot:
        _write(args.dot, G.to_dot(labels=labels) + "\n")
        if args.dot == "-":
            return OK
    for v, lab in enumerate(labels):
        print(f"v{v}  {lab}")
    for t, h in G.arrows:
        print(f"v{t} -> v{h}  ({labels[t]} -> {labels[h]})")
    comps = G.component_masks()
    print(f"{G.n} vertices, {len(G.arrows)} arrows, {len(comps)} component(s), "
          f"{'totally ordered' if G.is_totally_ordered() else 'not totally ordered'}")
    return OK


def cmd_redset(args) -> int:
    rank = args.rank or max(args.i + args.j - 1, args.i, args.j)
    ctx = CartanContext(rank)
    ctx.check_node(args.i)
    ctx.check_node(args.j)
    J = Subdiagram(*args.sub) if args.sub else ctx.full()
    print(",".join(str(x) for x in red_set_restricted(ctx, J, args.i, args.j, args.r, args.s)))
    return OK


def _primality_out(G: QFGraph, method: str, v, args) -> int:
    if isinstance(v, Factors):
        print(f"not prime: {v.factor} * {v.cofactor}")
    else:
        print(f"{'prime' if isinstance(v, Prime) else 'unknown'}")
    print(f"  {v.justification}")
    if args.json:
        _write(args.json, codec.dumps(codec.primality_to_json(G, method, v)))
    if isinstance(v, Factors):
        return NEGATIVE
    return OK if isinstance(v, Prime) else INCONCLUSIVE


def cmd_prime3(args) -> int:
    G = _graph(args)
    return _primality_out(G, "prime3", three_vertex_primality(G), args)


def cmd_prime(args) -> int:
    G = _graph(args)
    return _primality_out(G, "prime", prime_verdict(G), args)


def cmd_kkop(args) -> int:
    left, right = _spec(args.left), _spec(args.right)
    if left.ctx != right.ctx:
        raise UsageError("both sides must have the same rank")
    if not left.factors or not right.factors:
        raise UsageError("both sides must be nonempty")
    G = build_graph(left.ctx, left.factors + right.factors)
    n = len(left.factors)
    b = bound(G, range(n), range(n, G.n), args.budget)
    up = "inf" if b.upper == INF else str(b.upper)
    print(f"upper: {up}")
    print(f"lower: {b.lower}")
    if SNAKE in b.trace.rules_used():
        print("note: the bound uses an adopted rule")
    print(format_trace(b.trace))
    if args.json:
        _write(args.json, codec.dumps(codec.kkop_to_json(G.ctx, left.factors, right.factors, b)))
    return INCONCLUSIVE if b.upper == INF else OK


def _certify(args):
    G = _graph(args)
    ledger = _ledger(args, G.ctx.rank)
    return G, ledger, certify_real(G, ledger, args.budget)


def cmd_certify(args) -> int:
    G, ledger, res = _certify(args)
    idx = res.index
    print(f"status: {idx.status.value}")
    print(f"index: q >= {idx.q_lower}, r <= {idx.r_upper}")
    if res.chain is not None:
        flag = " (uses ledger facts)" if res.chain.conditional else ""
        print(f"chain of length {res.chain.length} via {res.chain.via}{flag}:")
        for k, p in enumerate(chain_parts(res.chain), 1):
            print(f"  {k}. {G.describe(p)}")
    for note in res.notes:
        print(f"note: {note}")
    if args.json:
        _write(args.json, codec.dumps(codec.reality_to_json(G, res, ledger)))
    return INCONCLUSIVE if idx.status is Status.INCONCLUSIVE else OK


def cmd_index(args) -> int:
    G, _, res = _certify(args)
    idx = res.index
    print(f"Q >= {idx.q_lower}")
    print(f"R <= {idx.r_upper}")
    print(f"status: {idx.status.value}")
    return INCONCLUSIVE if idx.status is Status.INCONCLUSIVE else OK


def cmd_survey(args) -> int:
    lo, hi = args.centers
    p = SurveyParams(args.rank, lo, hi, args.max_degree, args.nodes, args.parity, args.budget, args.limit)
    print(survey(p).summary())
    return OK


def cmd_replay(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        print(f"replay failed: {e}")
        return NEGATIVE
    errs = verify_document(doc) if isinstance(doc, dict) else ["certificate must be a JSON object"]
    if errs:
        print("replay failed:")
        for e in errs:
            print(f"  {e}")
        return NEGATIVE
    print("replay ok")
    return OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="realcert", description="Reality certificates for type-A quantum affine modules.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_spec(p, fundamental=False):
        p.add_argument("spec", help='polynomial, e.g. "A3; 2:0 1:3 3:3 2:6x2", or @fixture')
        p.add_argument("--pseudo", action="store_true", help="use the factors as given instead of q-factorizing")
        if fundamental:
            p.add_argument("--fundamental", action="store_true", help="graph on the fundamental factors")
        return p

    p = with_spec(sub.add_parser("factorize", help="print the q-factorization"))
    p.add_argument("--normalize", action="store_true")
    p.set_defaults(run=cmd_factorize)

    p = with_spec(sub.add_parser("graph", help="print the q-factorization graph"), fundamental=True)
    p.add_argument("--dot", metavar="PATH", help="write Graphviz DOT ('-' for stdout)")
    p.add_argument("--normalize", action="store_true")
    p.set_defaults(run=cmd_graph)

    p = sub.add_parser("redset", help="reducibility set of two KR modules")
    for name in ("i", "j", "r", "s"):
        p.add_argument(name, type=int)
    p.add_argument("--rank", type=int, help="default: the smallest rank holding both nodes and the gap")
    p.add_argument("--sub", type=int, nargs=2, metavar=("LO", "HI"), help="restrict to the interval [LO, HI]")
    p.set_defaults(run=cmd_redset)

    for name, fn, text in (("prime3", cmd_prime3, "exact test for 3-vertex lines"),
                           ("prime", cmd_prime, "best available primality verdict")):
        p = with_spec(sub.add_parser(name, help=text))
        p.add_argument("--json", metavar="PATH")
        p.set_defaults(run=fn)

    p = sub.add_parser("kkop", help="upper bound for the KKOP invariant")
    p.add_argument("--left", required=True, metavar="SPEC")
    p.add_argument("--right", required=True, metavar="SPEC")
    p.add_argument("--budget", type=int, default=KKOP_BUDGET)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(run=cmd_kkop)

    for name, fn, text in (("certify", cmd_certify, "search for a quochain certificate"),
                           ("index", cmd_index, "reality index bounds")):
        p = with_spec(sub.add_parser(name, help=text))
        p.add_argument("--ledger", metavar="FILE", help="JSON array of assumed facts")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if name == "certify":
            p.add_argument("--json", metavar="PATH", help="write the certificate ('-' for stdout)")
        p.set_defaults(run=fn)

    p = sub.add_parser("survey", help="certify every polynomial in a window")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--centers", type=_centers, required=True, metavar="LO..HI")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--nodes", type=_nodes, help="comma-separated nodes (default: all)")
    p.add_argument("--parity", action="store_true", help="only weights i_a with a = i mod 2")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    p.set_defaults(run=cmd_survey)

    p = sub.add_parser("replay", help="re-validate a certificate file")
    p.add_argument("file")
    p.set_defaults(run=cmd_replay)
    return ap


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return USAGE
    except SystemExit as e:  # --help
        return OK if not e.code else USAGE
    try:
        return args.run(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except (SpecError, CartanError, GraphError, KkopError, PrimalityError, LedgerError, SurveyError,
            ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())
