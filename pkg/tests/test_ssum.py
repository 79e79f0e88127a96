import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ordinals
from surlim.ordinal import OMEGA, ONE, ZERO, Ordinal, ord_add, ord_nat_sum
from surlim.parsing import parse_ordinal, parse_sign_expansion
from surlim.real_bridge import BELOW, Dyadic, add_eps, dyadic_to_se
from surlim.ssum import (
    Block,
    ConstantTail,
    DyadicEps,
    DyadicVal,
    GeometricTail,
    OrdinalVal,
    Raw,
    SummandSeq,
    UnsupportedAddition,
    UnsupportedShape,
    add_restricted,
    classify,
    join_index,
    permute_finite,
    ssum,
    swap,
    to_se,
)

O = parse_ordinal
S = parse_sign_expansion
ZERO_V, ONE_V = OrdinalVal(ZERO), OrdinalVal(ONE)

OMEGA_PLUS_ONE = SummandSeq((Block((ZERO_V,), ConstantTail(ONE_V)), Block((ONE_V,), ConstantTail(ZERO_V))))
ONES = SummandSeq((Block((), ConstantTail(ONE_V)),))
HALVES = SummandSeq((Block((), GeometricTail(Dyadic(1), 1)),))


@pytest.mark.parametrize("a,b,expected", [
    (OrdinalVal(OMEGA), ONE_V, OrdinalVal(O("w+1"))),
    (DyadicVal(Dyadic(1, 1)), DyadicVal(Dyadic(1, 2)), DyadicVal(Dyadic(3, 2))),
    (DyadicVal(Dyadic(1, 1)), DyadicEps(Dyadic(1), BELOW), DyadicEps(Dyadic(3, 1), BELOW)),
])
def test_add_examples(a, b, expected):
    assert to_se(add_restricted(a, b)) == to_se(expected)


def test_add_refuses_mixed_classes():
    with pytest.raises(UnsupportedAddition):
        add_restricted(OrdinalVal(OMEGA), DyadicVal(Dyadic(1, 1)))
    with pytest.raises(UnsupportedAddition):
        add_restricted(Raw(S("[+w, -w]")), ONE_V)


def test_omega_plus_one_example():
    assert to_se(ssum(O("w+1"), OMEGA_PLUS_ONE)) == S("[+w+1]")
    swapped = permute_finite(OMEGA_PLUS_ONE, swap(ZERO, OMEGA))
    assert swapped.at(ZERO) == ONE_V and swapped.at(OMEGA) == ZERO_V
    assert to_se(ssum(O("w+1"), swapped)) == S("[+w]")


@pytest.mark.parametrize("bound", ["w", "w+1", "w*2", "w*3+2"])
def test_ones_reproduce_bound(bound):
    assert ssum(O(bound), ONES) == OrdinalVal(O(bound))


def test_geometric_sum():
    v = ssum(OMEGA, HALVES)
    assert to_se(v) == S("[+1, -1, +w]")
    assert to_se(v) == add_eps(Dyadic(1), BELOW)


def test_permutation_examples():
    assert permute_finite(HALVES, []) == HALVES
    assert to_se(ssum(OMEGA, permute_finite(HALVES, swap(ZERO, ONE)))) == S("[+1, -1, +w]")


def test_bounds_are_capped():
    with pytest.raises(UnsupportedShape):
        ssum(O("w*5"), ONES)


def test_mixed_summands_refused():
    seq = SummandSeq((Block((OrdinalVal(OMEGA), DyadicVal(Dyadic(1, 1)))),))
    with pytest.raises(UnsupportedAddition):
        ssum(Ordinal.nat(2), seq)


def test_classify_variants():
    assert classify(S("[+w*2]")) == OrdinalVal(O("w*2"))
    assert classify(S("[-1, +1]")) == DyadicVal(Dyadic(-1, 1))
    assert classify(S("[+1, -1, +w]")) == DyadicEps(Dyadic(1), BELOW)
    assert isinstance(classify(S("[+w, -w]")), Raw)


# ---------------------------------------------------------------------------
# properties


def _random_dyadics(rng, n):
    return [Dyadic.from_fraction(Fraction(rng.randint(0, 64), 2 ** rng.randint(0, 5))) for _ in range(n)]


def _random_cycles(rng, reach):
    pos = rng.sample(range(reach), rng.randint(2, min(6, reach)))
    cuts = sorted(rng.sample(range(1, len(pos)), rng.randint(0, len(pos) - 2))) if len(pos) > 2 else []
    cycles, start = [], 0
    for c in cuts + [len(pos)]:
        if c - start >= 2:
            cycles.append([Ordinal.nat(p) for p in pos[start:c]])
        start = c
    return cycles or [[Ordinal.nat(pos[0]), Ordinal.nat(pos[1])]]


def _expected_dyadic_sum(prefix, coef, shift):
    p = len(prefix)
    total = sum((d.value for d in prefix), Fraction(0))
    tail = coef.value * Fraction(2, 2 ** (p + shift))
    d = Dyadic.from_fraction(total + tail)
    return add_eps(d, BELOW) if coef.value > 0 else dyadic_to_se(d)


@given(st.integers(0, 10 ** 9))
def test_nonnegative_dyadic_permutation_invariance(seed):
    rng = random.Random(seed)
    prefix = _random_dyadics(rng, rng.randint(0, 8))
    coef = _random_dyadics(rng, 1)[0] if rng.random() < 0.6 else Dyadic(0)
    shift = rng.randint(0, 3)
    seq = SummandSeq((Block(tuple(DyadicVal(d) for d in prefix), GeometricTail(coef, shift)),))
    expected = _expected_dyadic_sum(prefix, coef, shift)
    assert to_se(ssum(OMEGA, seq)) == expected
    for _ in range(3):
        assert to_se(ssum(OMEGA, permute_finite(seq, _random_cycles(rng, 12)))) == expected


def _sup_of_steps(p: Ordinal, c: Ordinal) -> Ordinal:
    """sup of p (+) c*n computed from the leading term of c."""
    if not c:
        return p
    e = c.lead_exp
    high = Ordinal(tuple((x, k) for x, k in p.terms if x > e))
    return ord_add(high, Ordinal.monomial(ord_add(e, ONE)))


@given(st.lists(ordinals(depth=1, max_coef=3), max_size=5), ordinals(depth=1, max_coef=3),
       st.integers(0, 10 ** 6))
def test_ordinal_sums_and_invariance(prefix, c, seed):
    seq = SummandSeq((Block(tuple(OrdinalVal(x) for x in prefix), ConstantTail(OrdinalVal(c))),))
    p = ZERO
    for x in prefix:
        p = ord_nat_sum(p, x)
    expected = OrdinalVal(_sup_of_steps(p, c))
    assert ssum(OMEGA, seq) == expected
    rng = random.Random(seed)
    assert ssum(OMEGA, permute_finite(seq, _random_cycles(rng, 8))) == expected


@given(st.integers(0, 10 ** 9), st.integers(0, 2), st.integers(0, 5))
def test_successor_coherence(seed, k, j):
    rng = random.Random(seed)
    if rng.random() < 0.5:
        blocks = tuple(
            Block(tuple(OrdinalVal(Ordinal.nat(rng.randint(0, 3))) for _ in range(rng.randint(0, 3))),
                  ConstantTail(OrdinalVal(Ordinal.nat(rng.randint(0, 2)))))
            for _ in range(3)
        )
    else:
        blocks = (Block(tuple(DyadicVal(d) for d in _random_dyadics(rng, 3)),
                        GeometricTail(_random_dyadics(rng, 1)[0], 1)),
                  Block(tuple(DyadicVal(d) for d in _random_dyadics(rng, 3)), ConstantTail(ZERO_V)))
    seq = SummandSeq(blocks)
    beta = join_index(k, j)
    try:
        before = ssum(beta, seq)
        after = ssum(ord_add(beta, ONE), seq)
    except UnsupportedAddition:
        return
    assert to_se(after) == to_se(add_restricted(seq.at(beta), before))
