"""``surlim`` command line.

Exit status is 0 on success, 1 when the input lies outside what the library
can decide (unsupported class, failed certificate) and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import ordinal
from .canonical import canonical_sides, limit_sides, limit_sides_check
from .jsonio import (
    descriptor_from_json,
    descriptor_to_json,
    dumps,
    load,
    outcome_to_json,
    real_sequence_from_json,
    summands_from_json,
    value_to_text,
)
from .limits import (
    DescriptorError,
    Explicit,
    OracleInconsistency,
    Parametric,
    Template,
    full_limit_check,
    slim,
    slim_diamond,
    slim_star,
)
from .ordinal import NonMonotoneFamily, Ordinal, OrdinalError, param_sup
from .parsing import (
    ParseError,
    parse_literal,
    parse_ordinal,
    parse_param,
    parse_rational,
    parse_sign_expansion,
)
from .real_bridge import (
    Dyadic,
    NotDyadic,
    StreamInconsistency,
    Unsupported,
    decompose,
    dyadic_to_se,
    rational_se_prefix,
    real_to_se_prefix,
    se_to_dyadic,
)
from .sign import SignExpansion, from_ordinal, se_cmp
from .ssum import (
    Block,
    ConstantTail,
    GeometricTail,
    OrdinalVal,
    SummandSeq,
    UnsupportedAddition,
    UnsupportedShape,
    permute_finite,
    ssum,
    to_se,
)
from .convergence import CATALOG, DEFAULT_DEPTH, E_SERIES, verify

DOMAIN_ERRORS = (
    Unsupported,
    NotDyadic,
    UnsupportedAddition,
    UnsupportedShape,
    OracleInconsistency,
    StreamInconsistency,
    DescriptorError,
    OrdinalError,
    NonMonotoneFamily,
)


class UsageError(ValueError):
    pass


def _emit(args, payload: dict, text: str) -> None:
    print(dumps(payload) if args.json else text)


def _as_se(text: str) -> SignExpansion:
    lit = parse_literal(text)
    if isinstance(lit, SignExpansion):
        return lit
    if isinstance(lit, Ordinal):
        return from_ordinal(lit)
    if isinstance(lit, Dyadic):
        return dyadic_to_se(lit)
    raise UsageError(f"{text!r} does not denote a single surreal")


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(args) -> int:
    p = parse_param(args.expr, functions=True)
    if p.is_constant():
        v = str(p.to_ordinal())
        _emit(args, {"value": v}, v)
        return 0
    enf, sup = str(p.enf()), str(param_sup(p))
    _emit(args, {"value": enf, "sup": sup}, f"{enf}\nsup = {sup}")
    return 0


def cmd_cmp(args) -> int:
    order = se_cmp(_as_se(args.a), _as_se(args.b)).value
    _emit(args, {"order": order}, order)
    return 0


def _descriptor(items: List[str]):
    if len(items) == 1 and os.path.isfile(items[0]):
        return descriptor_from_json(load(items[0]))
    lits = [parse_literal(t) for t in items]
    if all(isinstance(x, SignExpansion) for x in lits):
        return Explicit(tuple(lits))
    branches = []
    for t, x in zip(items, lits):
        if isinstance(x, SignExpansion):
            branches.append(Template.const(x))
        elif isinstance(x, Template):
            branches.append(x)
        else:
            raise UsageError(f"{t!r} is not a row literal")
    return Parametric(tuple(branches))


def cmd_slim(args) -> int:
    seq = _descriptor(args.rows)
    op = {"slim": slim, "diamond": slim_diamond, "star": slim_star}[args.variant]
    out = op(seq)
    full = full_limit_check(seq, out) if args.variant == "slim" else None
    payload = {"descriptor": descriptor_to_json(seq), "outcome": outcome_to_json(out, full)}
    text = str(out.value)
    if out.cut_place is not None:
        text += f"  (cut at {out.cut_place})"
    if full is not None:
        text += "  full" if full else "  not full"
    _emit(args, payload, text)
    return 0


def _named_summands(name: str) -> SummandSeq:
    zero, one = OrdinalVal(0), OrdinalVal(1)
    if name == "ones":
        return SummandSeq((Block((), ConstantTail(one)),))
    if name == "omega-plus-one":
        return SummandSeq((Block((zero,), ConstantTail(one)), Block((one,), ConstantTail(zero))))
    if name == "omega-plus-one-swapped":
        return permute_finite(_named_summands("omega-plus-one"), [(Ordinal.nat(0), ordinal.OMEGA)])
    if name == "halves":
        return SummandSeq((Block((), GeometricTail(Dyadic(1), 1)),))
    raise UsageError(f"unknown summand family {name!r}")


SUMMAND_FAMILIES = ("ones", "omega-plus-one", "omega-plus-one-swapped", "halves")


def cmd_ssum(args) -> int:
    bound = parse_ordinal(args.bound)
    if os.path.isfile(args.summands):
        seq = summands_from_json(load(args.summands))
    else:
        seq = _named_summands(args.summands)
    v = ssum(bound, seq)
    text = value_to_text(v)
    _emit(args, {"bound": str(bound), "value": text, "sign_expansion": str(to_se(v))}, text)
    return 0


def cmd_encode_real(args) -> int:
    depth = args.depth or DEFAULT_DEPTH
    if args.value == "eseries":
        s, exact = real_to_se_prefix(E_SERIES.stream(), depth), False
    else:
        q = parse_rational(args.value)
        if q.denominator & (q.denominator - 1) == 0:
            s, exact = dyadic_to_se(Dyadic.from_fraction(q)), True
        else:
            s, exact = rational_se_prefix(q, depth), False
    text = str(s) if exact else f"{s} ..."
    _emit(args, {"sign_expansion": str(s), "exact": exact, "depth": None if exact else depth}, text)
    return 0


def cmd_decode(args) -> int:
    d = se_to_dyadic(parse_sign_expansion(args.se))
    _emit(args, {"dyadic": str(d)}, str(d))
    return 0


def cmd_decompose(args) -> int:
    dec = decompose(parse_sign_expansion(args.se))
    real = None if dec.real_part is None else str(dec.real_part)
    payload = {"real_part": real, "eps": dec.eps.value, "classification": dec.classification.value}
    _emit(args, payload, f"{real} + {dec.eps.value}  ({dec.classification.value})")
    return 0


def cmd_canonical(args) -> int:
    rows = [parse_sign_expansion(t) for t in args.se]
    if len(rows) == 1:
        c = canonical_sides(rows[0])
        payload = {"left": [str(x) for x in c.left], "right": [str(x) for x in c.right]}
        text = "{" + ", ".join(map(str, c.left)) + " | " + ", ".join(map(str, c.right)) + "}"
        _emit(args, payload, text)
        return 0
    seq = Explicit(tuple(rows))
    c = limit_sides(seq)
    ok = limit_sides_check(seq)
    payload = {"left": [str(x) for x in c.left], "right": [str(x) for x in c.right], "separated": ok}
    _emit(args, payload, ("separated" if ok else "NOT separated") + f"  {{{len(c.left)} | {len(c.right)}}}")
    return 0 if ok else 1


def cmd_verify(args) -> int:
    depth = args.depth or DEFAULT_DEPTH
    names = list(CATALOG) if args.sequence == "all" else [args.sequence]
    reports = []
    for name in names:
        if name in CATALOG:
            seq = CATALOG[name]
        elif os.path.isfile(name):
            seq = real_sequence_from_json(load(name))
        else:
            raise UsageError(f"unknown sequence {name!r}; catalog: {', '.join(CATALOG)}")
        reports.append(verify(seq, depth, args.probe_budget))
    if args.json:
        data = [r.to_json() for r in reports]
        print(dumps(data if len(data) > 1 else data[0]))
    else:
        for r in reports:
            res = "PASS" if r.passed else "FAIL"
            print(f"{res} {r.name}: slim {r.slim}, lim {r.limit}, eps {r.epsilon} ({r.classification})")
            for note in r.notes:
                print(f"  {note}")
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--depth", type=int, default=None, help="places to expand for infinite expansions")
    common.add_argument("--probe-budget", type=int, default=None, help="rows sampled per oracle claim")
    common.add_argument("--max-cnf-depth", type=int, default=None, help="nesting bound for ordinals")

    parser = argparse.ArgumentParser(
        prog="surlim", description="Sign expansions, string limits and s-sums.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    p = sub.add_parser("eval", parents=[common], help="evaluate an ordinal expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("cmp", parents=[common], help="compare two surreals")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_cmp)

    p = sub.add_parser("slim", parents=[common], help="string limit of a row family")
    p.add_argument("rows", nargs="+", help="row literals, templates in n, or a descriptor file")
    p.add_argument("--variant", choices=("slim", "diamond", "star"), default="slim")
    p.set_defaults(func=cmd_slim)

    p = sub.add_parser("ssum", parents=[common], help="transfinite s-sum")
    p.add_argument("bound")
    p.add_argument("summands", help=f"summand file or one of {', '.join(SUMMAND_FAMILIES)}")
    p.set_defaults(func=cmd_ssum)

    p = sub.add_parser("encode-real", parents=[common], help="sign expansion of a rational or eseries")
    p.add_argument("value")
    p.set_defaults(func=cmd_encode_real)

    p = sub.add_parser("decode", parents=[common], help="dyadic value of a finite sign expansion")
    p.add_argument("se")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("decompose", parents=[common], help="real part and infinitesimal")
    p.add_argument("se")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("canonical", parents=[common], help="canonical sides, or limit sides of rows")
    p.add_argument("se", nargs="+")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("verify-thm1", parents=[common], help="check lim = slim + eps on a sequence")
    p.add_argument("sequence", help=f"catalog name, sequence file, or 'all' ({', '.join(CATALOG)})")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_cnf_depth is not None:
        ordinal.set_max_depth(args.max_cnf_depth)
    if args.probe_budget is not None:
        os.environ["SURLIM_PROBE_BUDGET"] = str(args.probe_budget)
    try:
        return args.func(args)
    except (ParseError, UsageError, json.JSONDecodeError) as exc:
        print(f"surlim: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"surlim: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
