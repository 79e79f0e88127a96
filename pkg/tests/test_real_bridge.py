from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import bisection_signs, signs_to_se
from surlim.ordinal import Order, Ordinal
from surlim.parsing import parse_sign_expansion
from surlim.real_bridge import (
    ABOVE,
    BELOW,
    Classification,
    Dyadic,
    Eps,
    NotDyadic,
    RealStream,
    StreamInconsistency,
    Unsupported,
    add_eps,
    decompose,
    dyadic_to_se,
    real_to_se_prefix,
    se_to_dyadic,
    simplest_dyadic_between,
)
from surlim.sign import negate, se_cmp, truncate
from surlim.convergence import E_SERIES

S = parse_sign_expansion
F = Fraction


def oracle_se(q):
    return bisection_signs(q)


as_se = signs_to_se


dyadics = st.builds(lambda m, k: Dyadic.from_fraction(F(m, 2 ** k)),
                    st.integers(-2 ** 12, 2 ** 12), st.integers(0, 10))


@pytest.mark.parametrize("q,expected", [
    (F(0), "[]"),
    (F(1, 2), "[+1, -1]"),
    (F(-3, 4), "[-1, +1, -1]"),
])
def test_dyadic_to_se_examples(q, expected):
    assert dyadic_to_se(Dyadic.from_fraction(q)) == S(expected)
    assert as_se(oracle_se(q)) == S(expected)


@pytest.mark.parametrize("s,expected", [("[]", F(0)), ("[+2, -1]", F(3, 2))])
def test_se_to_dyadic_examples(s, expected):
    assert se_to_dyadic(S(s)).value == expected
    assert as_se(oracle_se(expected)) == S(s)


def test_se_to_dyadic_rejects_transfinite():
    with pytest.raises(NotDyadic):
        se_to_dyadic(S("[+w]"))


@pytest.mark.parametrize("lo,hi,expected", [
    (F(0), F(1), F(1, 2)),
    (F(1), F(2), F(3, 2)),
    (F(-1), F(1), F(0)),
])
def test_simplest_between_examples(lo, hi, expected):
    assert simplest_dyadic_between(Dyadic.from_fraction(lo), Dyadic.from_fraction(hi)).value == expected


def test_simplest_between_rejects_empty_interval():
    with pytest.raises(ValueError):
        simplest_dyadic_between(Dyadic(1), Dyadic(1))


def test_real_prefix_examples():
    eleven_quarters = RealStream.constant(F(11, 4))
    assert real_to_se_prefix(eleven_quarters, 4) == S("[+3, -1]")
    assert real_to_se_prefix(eleven_quarters, 4) == truncate(dyadic_to_se(Dyadic.from_fraction(F(11, 4))), Ordinal.nat(4))
    assert real_to_se_prefix(E_SERIES.stream(), 2) == S("[+2]")
    assert real_to_se_prefix(RealStream.constant(0), 9) == S("[]")


def test_e_stream_prefix_matches_rational_bounds():
    # e lies in (sum_{k<=12} 1/k!, that + 1/12!) and both bounds share 20 places
    lo = sum(F(1, factorial(k)) for k in range(13))
    hi = lo + F(1, factorial(12))
    got = real_to_se_prefix(E_SERIES.stream(), 20)
    assert got.signs() == [1 if c == "+" else -1 for c in oracle_se_prefix(lo, 20)]
    assert got.signs() == [1 if c == "+" else -1 for c in oracle_se_prefix(hi, 20)]


def oracle_se_prefix(q, k):
    return bisection_signs(q, k)


def test_inconsistent_stream_detected():
    bad = RealStream(lambda n: F(n % 2), lambda m: 0, name="flip")
    with pytest.raises(StreamInconsistency):
        real_to_se_prefix(bad, 5)


@pytest.mark.parametrize("s,real,eps,cls", [
    ("[+1, -w]", F(0), Eps.PLUS, Classification.DYADIC_PLUS_EPS),
    ("[+2]", F(2), Eps.ZERO, Classification.DYADIC),
    ("[+1, -1, +w]", F(1), Eps.MINUS, Classification.DYADIC_MINUS_EPS),
])
def test_decompose_examples(s, real, eps, cls):
    d = decompose(S(s))
    assert (d.real_part.value, d.eps, d.classification) == (real, eps, cls)


def test_decompose_not_finite_and_unsupported():
    assert decompose(S("[+w]")).classification == Classification.NOT_FINITE
    with pytest.raises(Unsupported):
        decompose(S("[+1, -w^2]"))
    with pytest.raises(Unsupported):
        decompose(S("[+1, -w, +1]"))


@pytest.mark.parametrize("q,direction,expected", [
    (0, ABOVE, "[+1, -w]"),
    (2, ABOVE, "[+3, -w]"),
    (1, BELOW, "[+1, -1, +w]"),
])
def test_add_eps_examples(q, direction, expected):
    s = add_eps(Dyadic(q), direction)
    assert s == S(expected)
    assert decompose(s).real_part == Dyadic(q)


# ---------------------------------------------------------------------------
# properties


@given(dyadics)
def test_round_trip_and_negation(d):
    s = dyadic_to_se(d)
    assert se_to_dyadic(s) == d
    assert dyadic_to_se(-d) == negate(s)


@given(st.builds(lambda m, k: F(m, 2 ** k), st.integers(-300, 300), st.integers(0, 8)))
def test_bisection_oracle_agreement(q):
    assert dyadic_to_se(Dyadic.from_fraction(q)) == as_se(oracle_se(q))


@given(dyadics, dyadics)
def test_order_preserved(a, b):
    assert (a < b) == (se_cmp(dyadic_to_se(a), dyadic_to_se(b)) == Order.LESS)


@given(dyadics, st.sampled_from([ABOVE, BELOW]))
def test_decompose_inverts_add_eps(d, direction):
    dec = decompose(add_eps(d, direction))
    assert dec.real_part == d
    assert dec.eps == (Eps.PLUS if direction == ABOVE else Eps.MINUS)


EPS_RANK = {Eps.MINUS: -1, Eps.ZERO: 0, Eps.PLUS: 1}


@st.composite
def finite_class_surreals(draw):
    d = draw(st.builds(lambda m, k: Dyadic.from_fraction(F(m, 2 ** k)), st.integers(-40, 40), st.integers(0, 4)))
    kind = draw(st.sampled_from(["exact", ABOVE, BELOW]))
    return dyadic_to_se(d) if kind == "exact" else add_eps(d, kind)


@given(finite_class_surreals(), finite_class_surreals())
def test_order_matches_real_then_eps(a, b):
    da, db = decompose(a), decompose(b)
    key_a = (da.real_part.value, EPS_RANK[da.eps])
    key_b = (db.real_part.value, EPS_RANK[db.eps])
    expected = Order.LESS if key_a < key_b else Order.GREATER if key_a > key_b else Order.EQUAL
    assert se_cmp(a, b) == expected


@given(st.builds(lambda m, k: Dyadic.from_fraction(F(m, 2 ** k)), st.integers(-64, 64), st.integers(0, 6)))
def test_constant_stream_prefixes(d):
    s = dyadic_to_se(d)
    for k in range(int(s.birthday) + 1):
        assert real_to_se_prefix(RealStream.constant(d.value), k) == truncate(s, Ordinal.nat(k))
