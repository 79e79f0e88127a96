"""Ordinals below epsilon_0 in hereditary Cantor normal form.

Also holds ``ParamOrdinal``, an ordinal expression in one natural-number
variable ``n`` whose coefficients are affine forms ``a*n + b``.  Families of
this kind describe run lengths that grow with the row index of a sequence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

MAX_DEPTH = 8
MONOTONE_PROBE = 64


def set_max_depth(depth: int) -> None:
    global MAX_DEPTH
    if depth < 1:
        raise ValueError("depth bound must be positive")
    MAX_DEPTH = depth


class OrdinalError(ArithmeticError):
    pass


class DepthOverflow(OrdinalError):
    """Raised when a result would exceed the configured nesting bound."""


class NonMonotoneFamily(ValueError):
    pass


class Order(str, enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"

    @classmethod
    def of(cls, c: int) -> "Order":
        return cls.LESS if c < 0 else cls.GREATER if c > 0 else cls.EQUAL


class Ordinal:
    """An ordinal ``sum(w^e * c)`` with strictly decreasing exponents.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs; ``()`` is 0.
    Instances are immutable and hashable.
    """

    __slots__ = ("terms", "depth", "_hash")

    def __init__(self, terms: Iterable[Tuple["Ordinal", int]] = ()):
        terms = tuple(terms)
        prev = None
        depth = 0
        for e, c in terms:
            if not isinstance(e, Ordinal) or not isinstance(c, int):
                raise TypeError("terms must be (Ordinal, int) pairs")
            if c < 1:
                raise OrdinalError("coefficients must be positive")
            if prev is not None and _cmp(e, prev) >= 0:
                raise OrdinalError("exponents must be strictly decreasing")
            prev = e
            depth = max(depth, e.depth + 1)
        if depth > MAX_DEPTH:
            raise DepthOverflow(f"nesting depth {depth} exceeds bound {MAX_DEPTH}")
        self.terms = terms
        self.depth = depth
        self._hash = hash(terms)

    @classmethod
    def nat(cls, k: int) -> "Ordinal":
        if k < 0:
            raise OrdinalError("negative natural")
        return cls(((ZERO, k),)) if k else ZERO

    @classmethod
    def monomial(cls, exp: "Ordinal", coeff: int = 1) -> "Ordinal":
        return cls(((exp, coeff),)) if coeff else ZERO

    # -- inspection -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0])

    def __int__(self) -> int:
        if not self.is_finite():
            raise OrdinalError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def is_limit(self) -> bool:
        return bool(self.terms) and bool(self.terms[-1][0])

    def is_successor(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0]

    @property
    def lead_exp(self) -> "Ordinal":
        return self.terms[0][0] if self.terms else ZERO

    # -- order ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.nat(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return _cmp(self, _coerce(other)) < 0

    def __le__(self, other):
        return _cmp(self, _coerce(other)) <= 0

    def __gt__(self, other):
        return _cmp(self, _coerce(other)) > 0

    def __ge__(self, other):
        return _cmp(self, _coerce(other)) >= 0

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        return ord_add(self, _coerce(other))

    def __radd__(self, other):
        return ord_add(_coerce(other), self)

    def __mul__(self, other):
        return ord_mul(self, _coerce(other))

    def __rmul__(self, other):
        return ord_mul(_coerce(other), self)

    def nat_sum(self, other) -> "Ordinal":
        return ord_nat_sum(self, _coerce(other))

    def __repr__(self):
        return f"Ordinal({self})"

    def __str__(self):
        return format_ordinal(self)


ZERO = Ordinal.__new__(Ordinal)
ZERO.terms = ()
ZERO.depth = 0
ZERO._hash = hash(())
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def _coerce(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and x >= 0:
        return Ordinal.nat(x)
    raise TypeError(f"cannot use {x!r} as an ordinal")


def _cmp(a: Ordinal, b: Ordinal) -> int:
    if a is b:
        return 0
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def ord_cmp(a: Ordinal, b: Ordinal) -> Order:
    return Order.of(_cmp(a, b))


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    lead, lc = b.terms[0]
    kept = []
    for e, c in a.terms:
        s = _cmp(e, lead)
        if s > 0:
            kept.append((e, c))
        elif s == 0:
            lc += c
            break
        else:
            break
    return Ordinal(kept + [(lead, lc)] + list(b.terms[1:]))


def ord_nat_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Hessenberg sum: merge the two term lists, adding like coefficients."""
    out = []
    i = j = 0
    ta, tb = a.terms, b.terms
    while i < len(ta) and j < len(tb):
        s = _cmp(ta[i][0], tb[j][0])
        if s > 0:
            out.append(ta[i])
            i += 1
        elif s < 0:
            out.append(tb[j])
            j += 1
        else:
            out.append((ta[i][0], ta[i][1] + tb[j][1]))
            i += 1
            j += 1
    out.extend(ta[i:])
    out.extend(tb[j:])
    return Ordinal(out)


def ord_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if not a.terms or not b.terms:
        return ZERO
    lead, lc = a.terms[0]
    result = ZERO
    for f, d in b.terms:
        if f:
            piece = Ordinal.monomial(ord_add(lead, f), d)
        else:
            piece = Ordinal(((lead, lc * d),) + a.terms[1:])
        result = ord_add(result, piece)
    return result


def ord_left_sub(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique ``d`` with ``a + d == b``; requires ``a <= b``."""
    if _cmp(a, b) > 0:
        raise OrdinalError(f"{a} > {b}: left subtraction undefined")
    ta, tb = a.terms, b.terms
    k = 0
    while k < len(ta) and k < len(tb) and ta[k] == tb[k]:
        k += 1
    if k == len(ta):
        return Ordinal(tb[k:])
    ea, ca = ta[k]
    eb, cb = tb[k]
    if _cmp(ea, eb) == 0:
        return Ordinal(((eb, cb - ca),) + tb[k + 1:])
    return Ordinal(tb[k:])


def ord_max(a: Ordinal, b: Ordinal) -> Ordinal:
    return a if _cmp(a, b) >= 0 else b


def ord_min(a: Ordinal, b: Ordinal) -> Ordinal:
    return a if _cmp(a, b) <= 0 else b


def format_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if not e:
            parts.append(str(c))
            continue
        if e == ONE:
            base = "w"
        elif e.is_finite():
            base = f"w^{int(e)}"
        else:
            base = f"w^({format_ordinal(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


# ---------------------------------------------------------------------------
# parametric ordinals


@dataclass(frozen=True)
class Affine:
    """The coefficient ``a*n + b``."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0:
            raise OrdinalError("affine slope must be nonnegative")
        if self.a == 0 and self.b < 0:
            raise OrdinalError("constant coefficient must be nonnegative")

    def at(self, n: int) -> int:
        return self.a * n + self.b

    def is_const(self) -> bool:
        return self.a == 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __add__(self, other: "Affine") -> "Affine":
        return Affine(self.a + other.a, self.b + other.b)

    def __mul__(self, other: "Affine") -> "Affine":
        if self.a and other.a:
            raise OrdinalError("product of two parametric coefficients is not affine")
        return Affine(self.a * other.b + other.a * self.b, self.b * other.b)

    def ecmp(self, other: "Affine") -> int:
        """Comparison for all sufficiently large ``n``."""
        if self.a != other.a:
            return -1 if self.a < other.a else 1
        return (self.b > other.b) - (self.b < other.b)

    def substitute(self, A: int, B: int) -> "Affine":
        return Affine(self.a * A, self.a * B + self.b)

    def __str__(self):
        if self.a == 0:
            return str(self.b)
        head = "n" if self.a == 1 else f"{self.a}*n"
        if self.b == 0:
            return head
        return f"{head}+{self.b}" if self.b > 0 else f"{head}-{-self.b}"


class ParamOrdinal:
    """An ordinal sum of monomials ``w^E(n) * C(n)``, read left to right.

    ``terms`` keeps the written order (not necessarily decreasing); values are
    obtained by substitution followed by ordinal addition.  A family must be
    monotone nondecreasing in ``n``; ``check_monotone`` samples that.
    """

    __slots__ = ("terms", "_enf", "_hash")

    def __init__(self, terms: Iterable[Tuple["ParamOrdinal", Affine]] = ()):
        self.terms = tuple(terms)
        for e, c in self.terms:
            if not isinstance(e, ParamOrdinal) or not isinstance(c, Affine):
                raise TypeError("terms must be (ParamOrdinal, Affine) pairs")
        if self.depth() > MAX_DEPTH:
            raise DepthOverflow("parametric nesting exceeds bound")
        self._enf = None
        self._hash = hash(self.terms)

    @classmethod
    def const(cls, a: Ordinal) -> "ParamOrdinal":
        a = _coerce(a)
        return cls(tuple((cls.const(e), Affine(0, c)) for e, c in a.terms))

    @classmethod
    def affine(cls, a: int, b: int) -> "ParamOrdinal":
        c = Affine(a, b)
        return cls(() if c.is_zero() else ((P_ZERO, c),))

    def depth(self) -> int:
        return max((e.depth() + 1 for e, _ in self.terms), default=0)

    def __eq__(self, other):
        return isinstance(other, ParamOrdinal) and self.terms == other.terms

    def __hash__(self):
        return self._hash

    def is_constant(self) -> bool:
        return all(c.is_const() and e.is_constant() for e, c in self.terms)

    def to_ordinal(self) -> Ordinal:
        if not self.is_constant():
            raise OrdinalError(f"{self} depends on n")
        return self.eval(0)

    def eval(self, n: int) -> Ordinal:
        if n < 0:
            raise ValueError("n must be a natural number")
        out = ZERO
        for e, c in self.terms:
            k = c.at(n)
            if k < 0:
                raise OrdinalError(f"coefficient {c} is negative at n={n}")
            if k:
                out = ord_add(out, Ordinal.monomial(e.eval(n), k))
        return out

    def __add__(self, other) -> "ParamOrdinal":
        other = as_param(other)
        return ParamOrdinal(self.terms + other.terms)

    def substitute(self, A: int, B: int) -> "ParamOrdinal":
        """The family ``k -> self(A*k + B)``."""
        return ParamOrdinal(
            (e.substitute(A, B), c.substitute(A, B)) for e, c in self.terms
        )

    def check_monotone(self, probe: Optional[int] = None) -> None:
        probe = MONOTONE_PROBE if probe is None else probe
        prev = self.eval(0)
        for n in range(1, probe + 1):
            cur = self.eval(n)
            if _cmp(cur, prev) < 0:
                raise NonMonotoneFamily(f"{self} decreases between n={n - 1} and n={n}")
            prev = cur

    def enf(self) -> "ParamOrdinal":
        """Eventual normal form: exponents eventually strictly decreasing,
        coefficients eventually positive.  Agrees with ``self`` for large n."""
        if self._enf is None:
            acc: list = []
            for e, c in self.terms:
                if c.is_zero():
                    continue
                acc = _enf_add(acc, e.enf(), c)
            r = ParamOrdinal(acc)
            r._enf = r
            self._enf = r
        return self._enf

    def sup(self) -> Ordinal:
        return param_sup(self)

    def __repr__(self):
        return f"ParamOrdinal({self})"

    def __str__(self):
        return format_param(self)


P_ZERO = ParamOrdinal.__new__(ParamOrdinal)
P_ZERO.terms = ()
P_ZERO._enf = P_ZERO
P_ZERO._hash = hash(())
P_ONE = ParamOrdinal(((P_ZERO, Affine(0, 1)),))
P_N = ParamOrdinal(((P_ZERO, Affine(1, 0)),))


def as_param(x) -> ParamOrdinal:
    if isinstance(x, ParamOrdinal):
        return x
    return ParamOrdinal.const(_coerce(x))


def _ecmp(x: ParamOrdinal, y: ParamOrdinal) -> int:
    """Eventual comparison of two families in eventual normal form."""
    for (ex, cx), (ey, cy) in zip(x.terms, y.terms):
        s = _ecmp(ex, ey)
        if s:
            return s
        s = cx.ecmp(cy)
        if s:
            return s
    return (len(x.terms) > len(y.terms)) - (len(x.terms) < len(y.terms))


def _enf_add(acc: list, e: ParamOrdinal, c: Affine) -> list:
    kept = []
    for ea, ca in acc:
        s = _ecmp(ea, e)
        if s > 0:
            kept.append((ea, ca))
        elif s == 0:
            c = ca + c
            break
        else:
            break
    kept.append((e, c))
    return kept


def param_eval(p: ParamOrdinal, n: int) -> Ordinal:
    return p.eval(n)


def param_sup(p: ParamOrdinal, check: bool = True) -> Ordinal:
    """Least upper bound of ``{p(n)}`` for a monotone family."""
    if check:
        p.check_monotone()
    prefix = ZERO
    for e, c in p.enf().terms:
        if not e.is_constant():
            return ord_add(prefix, Ordinal.monomial(param_sup(e, check=False)))
        ce = e.to_ordinal()
        if not c.is_const():
            return ord_add(prefix, Ordinal.monomial(ord_add(ce, ONE)))
        prefix = ord_add(prefix, Ordinal.monomial(ce, c.b))
    return prefix


def param_is_eventually_constant(p: ParamOrdinal) -> bool:
    return p.enf().is_constant()


class Eventual(str, enum.Enum):
    LESS_OR_EQUAL = "eventually_less_or_equal"
    GREATER = "eventually_greater"


def param_eventual_cmp(p: ParamOrdinal, g: Ordinal) -> Tuple[Eventual, Optional[int]]:
    """Compare a monotone family against a fixed ordinal for large ``n``.

    Returns the verdict and, for ``GREATER``, the least ``n`` with
    ``p(n) > g`` (all later ``n`` then exceed ``g`` as well).
    """
    if _cmp(param_sup(p), g) <= 0:
        return Eventual.LESS_OR_EQUAL, None
    hi = 1
    while _cmp(p.eval(hi), g) <= 0:
        hi *= 2
    lo = 0
    if _cmp(p.eval(0), g) > 0:
        return Eventual.GREATER, 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _cmp(p.eval(mid), g) > 0:
            hi = mid
        else:
            lo = mid
    return Eventual.GREATER, hi


def format_param(p: ParamOrdinal) -> str:
    if p.is_constant():
        return format_ordinal(p.to_ordinal()) if _raw_is_cnf(p) else _format_raw(p)
    return _format_raw(p)


def _raw_is_cnf(p: ParamOrdinal) -> bool:
    try:
        return ParamOrdinal.const(p.to_ordinal()) == p
    except OrdinalError:
        return False


def _format_raw(p: ParamOrdinal) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.terms:
        if not e.terms:
            s = str(c)
            parts.append(f"({s})" if c.a and c.b else s)
            continue
        if e == P_ONE:
            base = "w"
        elif e.is_constant() and _raw_is_cnf(e) and e.to_ordinal().is_finite():
            base = f"w^{int(e.to_ordinal())}"
        elif e == P_N:
            base = "w^n"
        else:
            base = f"w^({format_param(e)})"
        if c == Affine(0, 1):
            parts.append(base)
        elif c.a and c.b:
            parts.append(f"{base}*({c})")
        else:
            parts.append(f"{base}*{c}")
    return "+".join(parts)
