import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import finite_sign_expansions
from surlim.canonical import canonical_sides, limit_sides, limit_sides_check
from surlim.limits import Explicit
from surlim.parsing import parse_sign_expansion
from surlim.real_bridge import Dyadic, Unsupported, dyadic_to_se, se_to_dyadic, simplest_dyadic_between

S = parse_sign_expansion


def d2s(q):
    return dyadic_to_se(Dyadic.from_fraction(Fraction(q)))


@pytest.mark.parametrize("s,left,right", [
    ("[]", [], []),
    ("[+1, -1]", ["[]"], ["[+1]"]),
    ("[+2]", ["[]", "[+1]"], []),
])
def test_sides_examples(s, left, right):
    c = canonical_sides(S(s))
    assert set(c.left) == {S(x) for x in left}
    assert set(c.right) == {S(x) for x in right}


def test_transfinite_refused():
    with pytest.raises(Unsupported):
        canonical_sides(S("[+w]"))


@pytest.mark.parametrize("rows", [
    ["[+2, -1]"] * 3,
    ["1.5", "1.75", "1.875"],
    ["1/2", "3/4", "1/2", "3/4", "1/2"],
])
def test_limit_sides_examples(rows):
    seq = Explicit(tuple(S(r) if r.startswith("[") else d2s(r) for r in rows))
    assert limit_sides_check(seq)


def test_constant_rows_keep_their_sides():
    s = S("[+2, -1, +1]")
    c = limit_sides(Explicit((s, s, s)))
    assert set(c.left) == set(canonical_sides(s).left)
    assert set(c.right) == set(canonical_sides(s).right)


def test_alternating_rows_keep_common_lower_segments():
    half, three_quarters = d2s("1/2"), d2s("3/4")
    c = limit_sides(Explicit((half, three_quarters) * 3))
    # [] lies below both; [+1] lies above both; [+1, -1] is a segment only of 3/4
    assert S("[]") in c.left and S("[+1]") in c.right
    assert S("[+1, -1]") in c.left


def _simplicity_holds(s):
    c = canonical_sides(s)
    lo, hi = c.max_left(), c.min_right()
    if lo is not None and hi is not None:
        return se_to_dyadic(s) == simplest_dyadic_between(se_to_dyadic(lo), se_to_dyadic(hi))
    if lo is None and hi is None:
        return not s.runs
    if hi is None:
        return se_to_dyadic(s).value == se_to_dyadic(lo).value + 1
    return se_to_dyadic(s).value == se_to_dyadic(hi).value - 1


def test_simplicity_recovery_all_small_dyadics():
    for k in range(9):
        for m in range(-(8 << k), (8 << k) + 1):
            s = d2s(Fraction(m, 2 ** k))
            assert _simplicity_holds(s), s


@given(finite_sign_expansions(12))
def test_sides_separate(s):
    c = canonical_sides(s)
    assert all(x < s for x in c.left) and all(s < y for y in c.right)
    assert len(c.left) + len(c.right) == int(s.birthday)


@given(st.lists(finite_sign_expansions(8), min_size=1, max_size=8))
def test_limit_sides_on_random_rows(rows):
    assert limit_sides_check(Explicit(tuple(rows)))
