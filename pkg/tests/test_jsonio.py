from hypothesis import given

from families import periodic
from surlim.jsonio import (
    descriptor_from_json,
    descriptor_to_json,
    dumps,
    real_sequence_from_json,
    summands_from_json,
    summands_to_json,
    value_from_text,
    value_to_text,
)
from surlim.limits import EventuallyConstant, Explicit, Patched, permute_rows, slim
from surlim.parsing import parse_sign_expansion
from surlim.real_bridge import BELOW, Dyadic
from surlim.ssum import Block, ConstantTail, DyadicEps, DyadicVal, GeometricTail, OrdinalVal, SummandSeq
from surlim.convergence import verify

S = parse_sign_expansion


def test_explicit_and_eventually_constant_round_trip():
    for seq in [
        Explicit((S("[+1]"), S("[-w, +2]"))),
        EventuallyConstant((S("[+1]"),), S("[+1, -w]")),
    ]:
        assert descriptor_from_json(descriptor_to_json(seq)) == seq


@given(periodic())
def test_parametric_round_trip(seq):
    back = descriptor_from_json(descriptor_to_json(seq))
    assert [str(b) for b in back.branches] == [str(b) for b in seq.branches]
    assert all(back.row(n) == seq.row(n) for n in range(10))


def test_patched_round_trip():
    from surlim.parsing import parse_template
    from surlim.limits import Parametric
    seq = permute_rows(Parametric((parse_template("[+n]"),)), {0: 2, 2: 0})
    back = descriptor_from_json(descriptor_to_json(seq))
    assert isinstance(back, Patched)
    assert all(back.row(n) == seq.row(n) for n in range(6))
    assert slim(back).value == slim(seq).value


def test_summands_round_trip():
    seq = SummandSeq((
        Block((OrdinalVal(S("[+3]").birthday), DyadicVal(Dyadic(-1, 2))), GeometricTail(Dyadic(3, 1), 2)),
        Block((DyadicEps(Dyadic(1), BELOW),), ConstantTail(OrdinalVal(S("[]").birthday))),
    ))
    assert summands_from_json(summands_to_json(seq)) == seq


def test_value_text_round_trip():
    for v in [OrdinalVal(S("[+w*2]").birthday), DyadicVal(Dyadic(-3, 2)), DyadicEps(Dyadic(5, 1), BELOW)]:
        assert value_from_text(value_to_text(v)) == v


def test_real_sequence_families():
    for data in [
        {"family": "catalog", "name": "osc2"},
        {"family": "explicit", "values": ["1", "-1/2"], "tail": "3/8"},
        {"family": "geometric", "limit": "5/4", "approach": "below", "shift": 1},
    ]:
        assert verify(real_sequence_from_json(data)).passed


def test_dumps_is_stable():
    assert dumps({"b": 1, "a": [1]}) == '{\n  "a": [\n    1\n  ],\n  "b": 1\n}'
