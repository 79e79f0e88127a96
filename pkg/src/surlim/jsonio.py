"""JSON forms of descriptors, summand sequences and results.

Every sign expansion, template or ordinal is stored in its literal text form,
so files stay readable and round-trip through the parser.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, Optional

from .limits import (
    DescriptorError,
    EventuallyConstant,
    Explicit,
    LimitOutcome,
    Parametric,
    Patched,
    SeqDescriptor,
)
from .ordinal import Ordinal
from .parsing import parse_dyadic, parse_literal, parse_sign_expansion, parse_template
from .real_bridge import ABOVE, BELOW, Dyadic
from .sign import SignExpansion
from .ssum import (
    Block,
    ConstantTail,
    DyadicVal,
    GeometricTail,
    OrdinalVal,
    RestrictedValue,
    SummandSeq,
    classify,
    to_se,
)
from .convergence import CATALOG, MIXED, RealSequence, Side, explicit_sequence

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# sequence descriptors


def descriptor_to_json(seq: SeqDescriptor) -> Dict[str, Any]:
    if isinstance(seq, Explicit):
        return {"kind": "explicit", "rows": [str(r) for r in seq.rows]}
    if isinstance(seq, EventuallyConstant):
        return {
            "kind": "eventually_constant",
            "prefix": [str(r) for r in seq.prefix],
            "tail": str(seq.tail),
        }
    if isinstance(seq, Parametric):
        return {"kind": "parametric", "branches": [str(b) for b in seq.branches]}
    if isinstance(seq, Patched):
        return {
            "kind": "patched",
            "base": descriptor_to_json(seq.base),
            "overrides": {str(n): str(r) for n, r in seq.overrides},
        }
    raise DescriptorError(f"{type(seq).__name__} has no JSON form")


def descriptor_from_json(data: Dict[str, Any]) -> SeqDescriptor:
    kind = data.get("kind")
    if kind == "explicit":
        return Explicit(tuple(parse_sign_expansion(r) for r in data["rows"]))
    if kind == "eventually_constant":
        return EventuallyConstant(
            tuple(parse_sign_expansion(r) for r in data.get("prefix", [])),
            parse_sign_expansion(data["tail"]),
        )
    if kind == "parametric":
        return Parametric(tuple(parse_template(b) for b in data["branches"]))
    if kind == "patched":
        overrides = tuple(
            sorted((int(n), parse_sign_expansion(r)) for n, r in data["overrides"].items())
        )
        return Patched(descriptor_from_json(data["base"]), overrides)
    raise DescriptorError(f"unknown descriptor kind {kind!r}")


def outcome_to_json(out: LimitOutcome, full: Optional[bool] = None) -> Dict[str, Any]:
    d = out.to_json()
    if full is not None:
        d["full"] = full
    return d


# ---------------------------------------------------------------------------
# summands


def value_to_text(v: RestrictedValue) -> str:
    if isinstance(v, OrdinalVal):
        return str(v.value)
    if isinstance(v, DyadicVal):
        return str(v.value)
    return str(to_se(v))


def value_from_text(text: str) -> RestrictedValue:
    lit = parse_literal(text)
    if isinstance(lit, SignExpansion):
        return classify(lit)
    if isinstance(lit, Ordinal):
        return OrdinalVal(lit)
    if isinstance(lit, Dyadic):
        return classify(to_se(DyadicVal(lit)))
    raise DescriptorError(f"{text!r} is not a summand value")


def summands_to_json(seq: SummandSeq) -> Dict[str, Any]:
    blocks = []
    for b in seq.blocks:
        if isinstance(b.tail, ConstantTail):
            tail = {"family": "constant", "value": value_to_text(b.tail.value)}
        else:
            tail = {"family": "geometric", "coef": str(b.tail.coef), "shift": b.tail.shift}
        blocks.append({"prefix": [value_to_text(v) for v in b.prefix], "tail": tail})
    return {"kind": "summands", "blocks": blocks}


def summands_from_json(data: Dict[str, Any]) -> SummandSeq:
    blocks = []
    for b in data["blocks"]:
        t = b.get("tail", {"family": "constant", "value": "0"})
        if t["family"] == "constant":
            tail = ConstantTail(value_from_text(t["value"]))
        elif t["family"] == "geometric":
            tail = GeometricTail(parse_dyadic(t["coef"]), int(t.get("shift", 0)))
        else:
            raise DescriptorError(f"unknown tail family {t['family']!r}")
        blocks.append(Block(tuple(value_from_text(v) for v in b.get("prefix", [])), tail))
    return SummandSeq(tuple(blocks))


# ---------------------------------------------------------------------------
# real sequences for the limit check


def _geometric_sequence(data: Dict[str, Any]) -> RealSequence:
    limit = Fraction(data["limit"])
    shift = int(data.get("shift", 0))
    pattern = data.get("approach", "above")
    if pattern not in (ABOVE, BELOW, "alternate"):
        raise DescriptorError("approach must be above, below or alternate")
    sign = {ABOVE: lambda n: 1, BELOW: lambda n: -1, "alternate": lambda n: 1 if n % 2 == 0 else -1}[pattern]
    side = {ABOVE: Side(ABOVE), BELOW: Side(BELOW), "alternate": Side(MIXED)}[pattern]

    def mod(m: int) -> int:
        return max(0, m + 1 - shift)

    return RealSequence(
        data.get("name", "geometric"),
        lambda n: limit + sign(n) * Fraction(1, 1 << (n + shift)),
        mod, limit, side,
        description=f"{limit} {pattern} by 2^-(n+{shift})",
    )


def real_sequence_from_json(data: Dict[str, Any]) -> RealSequence:
    family = data.get("family")
    if family == "catalog":
        return CATALOG[data["name"]]
    if family == "explicit":
        return explicit_sequence(
            data.get("name", "explicit"),
            [Fraction(v) for v in data["values"]],
            Fraction(data["tail"]),
        )
    if family == "geometric":
        return _geometric_sequence(data)
    raise DescriptorError(f"unknown sequence family {family!r}")


def load(path: str) -> Dict[str, Any]:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True)
