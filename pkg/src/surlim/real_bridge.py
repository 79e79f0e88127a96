"""Exact conversion between reals and sign expansions.

Dyadic rationals have finite expansions.  Finite surreals born by day
omega are either dyadics or dyadics shifted by +-1/w; ``decompose``
recognizes those shapes.  Reals in general are given as approximation
streams carrying a convergence modulus.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Union

from .ordinal import OMEGA, ONE, ZERO, Ordinal, _cmp
from .sign import (
    EMPTY,
    MINUS,
    PLUS,
    SignExpansion,
    concat,
    negate,
    normalize,
    truncate,
)


class NotDyadic(ValueError):
    pass


class Unsupported(ValueError):
    """Input lies outside the classes this module can handle."""


class StreamInconsistency(ValueError):
    pass


class Dyadic:
    """``numerator / 2**exponent`` in lowest terms."""

    __slots__ = ("numerator", "exponent")

    def __init__(self, numerator: int, exponent: int = 0):
        if exponent < 0:
            numerator <<= -exponent
            exponent = 0
        while exponent and numerator % 2 == 0:
            numerator //= 2
            exponent -= 1
        if numerator == 0:
            exponent = 0
        self.numerator = numerator
        self.exponent = exponent

    @classmethod
    def from_fraction(cls, q) -> "Dyadic":
        q = Fraction(q)
        d = q.denominator
        if d & (d - 1):
            raise NotDyadic(f"{q} is not a dyadic rational")
        return cls(q.numerator, d.bit_length() - 1)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return (self.numerator, self.exponent) == (other.numerator, other.exponent)
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other):
        return self.value < _val(other)

    def __le__(self, other):
        return self.value <= _val(other)

    def __gt__(self, other):
        return self.value > _val(other)

    def __ge__(self, other):
        return self.value >= _val(other)

    def __add__(self, other):
        return Dyadic.from_fraction(self.value + _val(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Dyadic.from_fraction(self.value - _val(other))

    def __neg__(self):
        return Dyadic(-self.numerator, self.exponent)

    def __repr__(self):
        return f"Dyadic({self})"

    def __str__(self):
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"


def _val(x) -> Fraction:
    return x.value if isinstance(x, Dyadic) else Fraction(x)


def simplest_dyadic_between(lo, hi) -> Dyadic:
    """The earliest-born dyadic strictly inside ``(lo, hi)``.

    Either bound may be ``None`` for an infinite end.
    """
    lo = None if lo is None else _val(lo)
    hi = None if hi is None else _val(hi)
    if lo is not None and hi is not None and lo >= hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if (lo is None or lo < 0) and (hi is None or hi > 0):
        return Dyadic(0)
    if hi is not None and hi <= 0:
        return -simplest_dyadic_between(-hi, None if lo is None else -lo)
    k = 0
    while True:
        m = (lo * (1 << k)).__floor__() + 1
        cand = Fraction(m, 1 << k)
        if hi is None or cand < hi:
            return Dyadic.from_fraction(cand)
        k += 1


def dyadic_to_se(d) -> SignExpansion:
    """Sign expansion of a dyadic, by the digit rule.

    For ``x = m + f`` with ``0 < f < 1`` and binary digits ``f = 0.b1...bk``
    the expansion is ``+^(m+1) -`` followed by ``b1..b(k-1)`` read as
    ``1 -> +``, ``0 -> -``.  Negatives are mirrored.
    """
    if not isinstance(d, Dyadic):
        d = Dyadic.from_fraction(d)
    if d.numerator < 0:
        return negate(dyadic_to_se(-d))
    q = d.value
    m = q.numerator // q.denominator
    f = q - m
    if f == 0:
        return normalize(((PLUS, Ordinal.nat(m)),))
    signs = [PLUS] * (m + 1) + [MINUS]
    bits = []
    while f:
        f *= 2
        bit = int(f >= 1)
        bits.append(bit)
        f -= bit
    signs += [PLUS if b else MINUS for b in bits[:-1]]
    return SignExpansion.from_signs(signs)


def se_to_dyadic(s: SignExpansion) -> Dyadic:
    if not s.is_finite():
        raise NotDyadic(f"{s} has transfinite birthday")
    lo = hi = None
    cur = Dyadic(0)
    for sign in s.signs():
        if sign > 0:
            lo = cur
        else:
            hi = cur
        cur = simplest_dyadic_between(lo, hi)
    return cur


def bisection_signs(target: Fraction, limit: Optional[int] = None) -> List[int]:
    """Signs of ``target`` by walking the simplicity bisection from 0.

    Stops when the current simplest value equals ``target`` or after
    ``limit`` places.  Works for any rational.
    """
    target = Fraction(target)
    lo = hi = None
    cur = Fraction(0)
    out = []
    while cur != target and (limit is None or len(out) < limit):
        if target > cur:
            out.append(PLUS)
            lo = cur
        else:
            out.append(MINUS)
            hi = cur
        cur = simplest_dyadic_between(lo, hi).value
    return out


def bisection_se(d) -> SignExpansion:
    """Independent oracle for ``dyadic_to_se``."""
    return SignExpansion.from_signs(bisection_signs(_val(d)))


def rational_se_prefix(q, k: int) -> SignExpansion:
    return SignExpansion.from_signs(bisection_signs(Fraction(q), k))


# ---------------------------------------------------------------------------
# real streams


@dataclass(frozen=True)
class RealStream:
    """A real given by rational approximants and a convergence modulus.

    ``modulus(m)`` is an index ``N`` such that all approximants from ``N``
    on lie within ``2**-m`` of each other.  ``exact`` may carry the value when
    it is a known rational; comparisons against dyadics that coincide with the
    real cannot be decided from approximants alone.
    """

    approx: Callable[[int], Fraction]
    modulus: Callable[[int], int]
    exact: Optional[Fraction] = None
    name: str = ""

    @classmethod
    def constant(cls, q) -> "RealStream":
        q = Fraction(q)
        return cls(lambda n: q, lambda m: 0, exact=q, name=str(q))

    def check(self, m: int, probe: int = 16) -> None:
        N = self.modulus(m)
        base = Fraction(self.approx(N))
        eps = Fraction(1, 1 << m)
        for j in range(N, N + probe):
            if abs(Fraction(self.approx(j)) - base) > eps:
                raise StreamInconsistency(
                    f"{self.name or 'stream'}: approximant {j} leaves the 2^-{m} window of index {N}"
                )

    def sign_vs(self, c: Fraction, max_bits: int = 512) -> int:
        """Sign of ``value - c``, decided exactly."""
        if self.exact is not None:
            d = self.exact - c
            return (d > 0) - (d < 0)
        for m in range(1, max_bits):
            self.check(m, probe=4)
            a = Fraction(self.approx(self.modulus(m)))
            if abs(a - c) > Fraction(1, 1 << m):
                return 1 if a > c else -1
        raise StreamInconsistency(f"cannot separate the stream from {c} within 2^-{max_bits}")


def real_to_se_prefix(r: RealStream, k: int) -> SignExpansion:
    """First ``k`` places of the sign expansion of the real ``r``."""
    lo = hi = None
    cur = Fraction(0)
    signs = []
    while len(signs) < k:
        s = r.sign_vs(cur)
        if s == 0:
            break
        signs.append(PLUS if s > 0 else MINUS)
        if s > 0:
            lo = cur
        else:
            hi = cur
        cur = simplest_dyadic_between(lo, hi).value
    return SignExpansion.from_signs(signs)


# ---------------------------------------------------------------------------
# R(s) + eps(s)


class Eps(str, enum.Enum):
    ZERO = "0"
    PLUS = "+1/w"
    MINUS = "-1/w"

    def __neg__(self):
        return {Eps.ZERO: Eps.ZERO, Eps.PLUS: Eps.MINUS, Eps.MINUS: Eps.PLUS}[self]


class Classification(str, enum.Enum):
    DYADIC = "dyadic"
    DYADIC_PLUS_EPS = "dyadic_plus_eps"
    DYADIC_MINUS_EPS = "dyadic_minus_eps"
    NONDYADIC_REAL = "nondyadic_real"
    NOT_FINITE = "not_finite"


@dataclass(frozen=True)
class Decomposition:
    real_part: Union[Dyadic, RealStream, None]
    eps: Eps
    classification: Classification


ABOVE = "above"
BELOW = "below"

_PLUS_EPS_TAIL = SignExpansion(((PLUS, ONE), (MINUS, OMEGA)))
_MINUS_EPS_TAIL = SignExpansion(((MINUS, ONE), (PLUS, OMEGA)))


def add_eps(d, direction: str) -> SignExpansion:
    """``d + 1/w`` (``above``) or ``d - 1/w`` (``below``)."""
    base = dyadic_to_se(d)
    if direction == ABOVE:
        return concat(base, _PLUS_EPS_TAIL)
    if direction == BELOW:
        return concat(base, _MINUS_EPS_TAIL)
    raise ValueError(f"direction must be {ABOVE!r} or {BELOW!r}")


def decompose(s: SignExpansion) -> Decomposition:
    if s.runs and not s.runs[0][1].is_finite():
        return Decomposition(None, Eps.ZERO, Classification.NOT_FINITE)
    b = s.birthday
    if b.is_finite():
        return Decomposition(se_to_dyadic(s), Eps.ZERO, Classification.DYADIC)
    if b == OMEGA and len(s.runs) >= 2 and s.runs[-1][1] == OMEGA:
        head = SignExpansion(s.runs[:-1])
        last_sign = s.runs[-2][0]
        d = se_to_dyadic(truncate(head, Ordinal.nat(int(head.birthday) - 1)))
        if last_sign == PLUS:
            return Decomposition(d, Eps.PLUS, Classification.DYADIC_PLUS_EPS)
        return Decomposition(d, Eps.MINUS, Classification.DYADIC_MINUS_EPS)
    raise Unsupported(f"{s} is not in a recognized finite class")
