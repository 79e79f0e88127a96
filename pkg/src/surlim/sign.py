"""Surreal numbers as run-length sign expansions with ordinal run lengths."""

from __future__ import annotations

import enum
from typing import Iterable, List, Sequence, Tuple

from .ordinal import (
    ONE,
    ZERO,
    Order,
    Ordinal,
    _cmp,
    _coerce,
    ord_add,
    ord_left_sub,
)

PLUS = 1
MINUS = -1


class SignQuery(str, enum.Enum):
    PLUS = "plus"
    MINUS = "minus"
    UNDEFINED = "undefined"

    @property
    def rank(self) -> int:
        # surreal order: minus < undefined < plus
        return {SignQuery.MINUS: -1, SignQuery.UNDEFINED: 0, SignQuery.PLUS: 1}[self]


def _query(sign: int) -> SignQuery:
    return SignQuery.PLUS if sign > 0 else SignQuery.MINUS


class SignExpansion:
    """Normalized alternating runs ``(sign, length)``; ``()`` is the surreal 0."""

    __slots__ = ("runs", "_hash", "_birthday")

    def __init__(self, runs: Iterable[Tuple[int, Ordinal]] = ()):
        runs = tuple((s, _coerce(l)) for s, l in runs)
        for i, (s, l) in enumerate(runs):
            if s not in (PLUS, MINUS):
                raise ValueError(f"bad sign {s!r}")
            if not l:
                raise ValueError("run lengths must be at least 1")
            if i and runs[i - 1][0] == s:
                raise ValueError("adjacent runs must alternate in sign")
        self.runs = runs
        self._hash = hash(runs)
        self._birthday = None

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> "SignExpansion":
        return normalize((s, ONE) for s in signs)

    @property
    def birthday(self) -> Ordinal:
        if self._birthday is None:
            b = ZERO
            for _, l in self.runs:
                b = ord_add(b, l)
            self._birthday = b
        return self._birthday

    def is_finite(self) -> bool:
        return self.birthday.is_finite()

    def signs(self) -> List[int]:
        """Place-by-place signs of a finite expansion."""
        if not self.is_finite():
            raise ValueError("only finite expansions unroll to a sign list")
        return [s for s, l in self.runs for _ in range(int(l))]

    def __eq__(self, other):
        return isinstance(other, SignExpansion) and self.runs == other.runs

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return _se_cmp(self, other) < 0

    def __le__(self, other):
        return _se_cmp(self, other) <= 0

    def __gt__(self, other):
        return _se_cmp(self, other) > 0

    def __ge__(self, other):
        return _se_cmp(self, other) >= 0

    def __neg__(self):
        return negate(self)

    def __repr__(self):
        return f"SignExpansion({self})"

    def __str__(self):
        return "[" + ", ".join(("+" if s > 0 else "-") + str(l) for s, l in self.runs) + "]"


EMPTY = SignExpansion()


def normalize(raw: Iterable[Tuple[int, Ordinal]]) -> SignExpansion:
    out: list = []
    for s, l in raw:
        l = _coerce(l)
        if not l:
            continue
        if out and out[-1][0] == s:
            out[-1] = (s, ord_add(out[-1][1], l))
        else:
            out.append((s, l))
    return SignExpansion(out)


def sign_at(s: SignExpansion, place: Ordinal) -> SignQuery:
    place = _coerce(place)
    start = ZERO
    for sign, l in s.runs:
        end = ord_add(start, l)
        if _cmp(place, end) < 0:
            return _query(sign)
        start = end
    return SignQuery.UNDEFINED


def first_difference(a: SignExpansion, b: SignExpansion):
    """Least place where ``a`` and ``b`` differ, with the two sign values there.

    Returns ``None`` for identical expansions.  Works on run boundaries.
    """
    pos = ZERO
    i = j = 0
    ra, rb = list(a.runs), list(b.runs)
    # remaining lengths of the current runs
    la = ra[0][1] if ra else None
    lb = rb[0][1] if rb else None
    while True:
        if i == len(ra) and j == len(rb):
            return None
        if i == len(ra) or j == len(rb):
            qa = SignQuery.UNDEFINED if i == len(ra) else _query(ra[i][0])
            qb = SignQuery.UNDEFINED if j == len(rb) else _query(rb[j][0])
            return pos, qa, qb
        sa, sb = ra[i][0], rb[j][0]
        if sa != sb:
            return pos, _query(sa), _query(sb)
        c = _cmp(la, lb)
        step = la if c <= 0 else lb
        pos = ord_add(pos, step)
        if c <= 0:
            i += 1
            la = ra[i][1] if i < len(ra) else None
            if c < 0:
                lb = ord_left_sub(step, lb)
        if c >= 0:
            j += 1
            lb = rb[j][1] if j < len(rb) else None
            if c > 0:
                la = ord_left_sub(step, la)


def _se_cmp(a: SignExpansion, b: SignExpansion) -> int:
    d = first_difference(a, b)
    if d is None:
        return 0
    _, qa, qb = d
    return -1 if qa.rank < qb.rank else 1


def se_cmp(a: SignExpansion, b: SignExpansion) -> Order:
    return Order.of(_se_cmp(a, b))


def concat(a: SignExpansion, b: SignExpansion) -> SignExpansion:
    return normalize(a.runs + b.runs)


def truncate(s: SignExpansion, cut: Ordinal) -> SignExpansion:
    """Restriction of ``s`` to the places below ``cut``."""
    cut = _coerce(cut)
    out = []
    start = ZERO
    for sign, l in s.runs:
        end = ord_add(start, l)
        if _cmp(cut, end) <= 0:
            part = ord_left_sub(start, cut)
            if part:
                out.append((sign, part))
            return SignExpansion(out)
        out.append((sign, l))
        start = end
    return s


def negate(s: SignExpansion) -> SignExpansion:
    return SignExpansion((-sign, l) for sign, l in s.runs)


def from_ordinal(a: Ordinal) -> SignExpansion:
    """The all-plus expansion of an ordinal."""
    a = _coerce(a)
    return SignExpansion(((PLUS, a),)) if a else EMPTY


def to_ordinal(s: SignExpansion) -> Ordinal:
    if not s.runs:
        return ZERO
    if len(s.runs) == 1 and s.runs[0][0] == PLUS:
        return s.runs[0][1]
    raise ValueError(f"{s} is not an ordinal")
