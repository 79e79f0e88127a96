"""Transfinite s-sums with restricted surreal addition.

``S_0 = 0``, ``S_{b+1} = s_b + S_b`` and at a limit ``l`` the value is the
string limit of the partial sums below ``l``.  Addition is implemented only
for ordinals (natural sum), dyadics, and dyadics shifted by an infinitesimal
``+-1/w``; anything else is refused.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .limits import Parametric, Template, slim
from .ordinal import (
    ZERO,
    Affine,
    Ordinal,
    ParamOrdinal,
    _coerce,
    ord_nat_sum,
)
from .real_bridge import (
    ABOVE,
    BELOW,
    Classification,
    Dyadic,
    Eps,
    Unsupported,
    add_eps,
    decompose,
    dyadic_to_se,
)
from .sign import PLUS, SignExpansion, from_ordinal
from .convergence import EQUAL, RealSequence, Side, eventual_walk

MAX_BLOCKS = 4


class UnsupportedAddition(ValueError):
    pass


class UnsupportedShape(ValueError):
    pass


# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True)
class OrdinalVal:
    value: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "value", _coerce(self.value))


@dataclass(frozen=True)
class DyadicVal:
    value: Dyadic


@dataclass(frozen=True)
class DyadicEps:
    value: Dyadic
    direction: str

    def __post_init__(self):
        if self.direction not in (ABOVE, BELOW):
            raise ValueError(f"direction must be {ABOVE!r} or {BELOW!r}")


@dataclass(frozen=True)
class Raw:
    value: SignExpansion


RestrictedValue = Union[OrdinalVal, DyadicVal, DyadicEps, Raw]


def to_se(v: RestrictedValue) -> SignExpansion:
    if isinstance(v, OrdinalVal):
        return from_ordinal(v.value)
    if isinstance(v, DyadicVal):
        return dyadic_to_se(v.value)
    if isinstance(v, DyadicEps):
        return add_eps(v.value, v.direction)
    return v.value


def classify(s: SignExpansion) -> RestrictedValue:
    """The narrowest variant whose rendering is ``s``."""
    if not s.runs or (len(s.runs) == 1 and s.runs[0][0] == PLUS):
        b = s.birthday
        return OrdinalVal(b)
    try:
        dec = decompose(s)
    except Unsupported:
        return Raw(s)
    if dec.classification == Classification.DYADIC:
        return DyadicVal(dec.real_part)
    if dec.classification == Classification.DYADIC_PLUS_EPS:
        return DyadicEps(dec.real_part, ABOVE)
    if dec.classification == Classification.DYADIC_MINUS_EPS:
        return DyadicEps(dec.real_part, BELOW)
    return Raw(s)


def same_value(a: RestrictedValue, b: RestrictedValue) -> bool:
    return to_se(a) == to_se(b)


def _as_dyadic(v: RestrictedValue) -> Optional[Dyadic]:
    if isinstance(v, DyadicVal):
        return v.value
    if isinstance(v, OrdinalVal) and v.value.is_finite():
        return Dyadic(int(v.value))
    return None


def _tidy(d: Dyadic) -> RestrictedValue:
    # nonnegative integers are ordinals too; keep one canonical variant
    if d.exponent == 0 and d.numerator >= 0:
        return OrdinalVal(Ordinal.nat(d.numerator))
    return DyadicVal(d)


def add_restricted(a: RestrictedValue, b: RestrictedValue) -> RestrictedValue:
    if isinstance(a, OrdinalVal) and isinstance(b, OrdinalVal):
        return OrdinalVal(ord_nat_sum(a.value, b.value))
    da, db = _as_dyadic(a), _as_dyadic(b)
    if da is not None and db is not None:
        return _tidy(da + db)
    if da is not None and isinstance(b, DyadicEps):
        return DyadicEps(da + b.value, b.direction)
    if db is not None and isinstance(a, DyadicEps):
        return DyadicEps(a.value + db, a.direction)
    if isinstance(a, DyadicEps) and isinstance(b, DyadicEps) and a.direction != b.direction:
        return _tidy(a.value + b.value)
    raise UnsupportedAddition(f"cannot add {to_se(a)} and {to_se(b)}")


# ---------------------------------------------------------------------------
# summand sequences


@dataclass(frozen=True)
class ConstantTail:
    value: RestrictedValue

    def at(self, j: int) -> RestrictedValue:
        return self.value


@dataclass(frozen=True)
class GeometricTail:
    """Summand ``j`` is ``coef * 2**-(j + shift)``."""

    coef: Dyadic
    shift: int = 0

    def at(self, j: int) -> RestrictedValue:
        return _tidy(Dyadic(self.coef.numerator, self.coef.exponent + j + self.shift))


Tail = Union[ConstantTail, GeometricTail]


@dataclass(frozen=True)
class Block:
    """Summands ``s_{w*k + j}``: ``prefix[j]`` if given, else ``tail.at(j)``."""

    prefix: Tuple[RestrictedValue, ...] = ()
    tail: Tail = ConstantTail(OrdinalVal(ZERO))

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))

    def at(self, j: int) -> RestrictedValue:
        return self.prefix[j] if j < len(self.prefix) else self.tail.at(j)


@dataclass(frozen=True)
class SummandSeq:
    """Summands indexed by ordinals below ``w * len(blocks)``; block ``k``
    covers ``w*k + j``.  Later blocks repeat the last one."""

    blocks: Tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise UnsupportedShape("a summand sequence needs at least one block")

    def block(self, k: int) -> Block:
        return self.blocks[min(k, len(self.blocks) - 1)]

    def at(self, index: Ordinal) -> RestrictedValue:
        k, j = split_index(index)
        return self.block(k).at(j)


def split_index(index: Ordinal) -> Tuple[int, int]:
    """``w*k + j`` as ``(k, j)``; larger ordinals are rejected."""
    index = _coerce(index)
    k = j = 0
    for e, c in index.terms:
        if e == ZERO:
            j = c
        elif e == Ordinal.nat(1):
            k = c
        else:
            raise UnsupportedShape(f"index {index} is not below w^2")
    return k, j


def join_index(k: int, j: int) -> Ordinal:
    terms = []
    if k:
        terms.append((Ordinal.nat(1), k))
    if j:
        terms.append((ZERO, j))
    return Ordinal(tuple(terms))


# ---------------------------------------------------------------------------
# the sum


def _ordinal_block_limit(q: RestrictedValue, block: Block) -> RestrictedValue:
    """Limit of ``S_{w*k+n}`` when the block's summands are ordinals."""
    p = len(block.prefix)
    start = q
    for j in range(p):
        start = add_restricted(block.at(j), start)
    c = block.tail.value
    if not isinstance(start, OrdinalVal) or not isinstance(c, OrdinalVal):
        raise UnsupportedAddition("ordinal partial sums need ordinal summands")
    if not c.value:
        return start
    # row i is start (+) c*i, merged termwise
    coeffs: Dict[Ordinal, Affine] = {}
    for e, k in start.value.terms:
        coeffs[e] = Affine(0, k)
    for e, k in c.value.terms:
        coeffs[e] = coeffs.get(e, Affine(0, 0)) + Affine(k, 0)
    terms = tuple(
        (ParamOrdinal.const(e), coeffs[e]) for e in sorted(coeffs, reverse=True)
    )
    rows = Parametric((Template(((PLUS, ParamOrdinal(terms)),)),))
    return classify(slim(rows).value)


def _dyadic_parts(v: RestrictedValue) -> Optional[Tuple[Fraction, Eps]]:
    d = _as_dyadic(v)
    if d is not None:
        return d.value, Eps.ZERO
    if isinstance(v, DyadicEps):
        return v.value.value, Eps.PLUS if v.direction == ABOVE else Eps.MINUS
    return None


def _dyadic_block_limit(q: RestrictedValue, block: Block) -> RestrictedValue:
    """Limit of ``S_{w*k+n}`` for dyadic summands, through the bisection walk."""
    base = _dyadic_parts(q)
    if base is None:
        raise UnsupportedAddition(f"cannot continue a dyadic sum from {to_se(q)}")
    p = len(block.prefix)
    partial = [base[0]]
    for j in range(p):
        part = _dyadic_parts(block.at(j))
        if part is None or part[1] is not Eps.ZERO:
            raise UnsupportedAddition("dyadic blocks take plain dyadic summands")
        partial.append(partial[-1] + part[0])
    eps = base[1]
    Q = partial[-1]
    tail = block.tail

    def eps_row(n: int) -> Eps:
        return eps

    if isinstance(tail, ConstantTail):
        part = _dyadic_parts(tail.value)
        if part is None or part[1] is not Eps.ZERO:
            raise UnsupportedAddition("constant tails must be plain dyadics here")
        step = part[0]
        if step == 0:
            return q if p == 0 else _with_eps(Q, eps)
        direction = 1 if step > 0 else -1

        def term(n: int) -> Fraction:
            return partial[n] if n <= p else Q + step * (n - p)

        def divergence(M: int) -> int:
            need = (M - direction * Q) / abs(step)
            return p + max(0, -(-need.numerator // need.denominator))

        seq = RealSequence("partial sums", term, direction=direction,
                           divergence=divergence, eps=eps_row)
        return classify(eventual_walk(seq).value)

    coef = tail.coef.value
    first = coef / (1 << (p + tail.shift))
    limit = Q + 2 * first

    def term(n: int) -> Fraction:
        if n <= p:
            return partial[n]
        return Q + 2 * first * (1 - Fraction(1, 1 << (n - p)))

    def modulus(m: int) -> int:
        N = p
        while abs(2 * first) / (1 << (N - p)) > Fraction(1, 1 << m):
            N += 1
        return N

    if coef == 0:
        side = Side(EQUAL, p)
    elif coef > 0:
        side = Side(BELOW, p)
    else:
        side = Side(ABOVE, p)
    if eps is not Eps.ZERO and coef == 0:
        side = Side(ABOVE if eps is Eps.PLUS else BELOW, p)
    seq = RealSequence("partial sums", term, modulus, limit, side, eps=eps_row)
    return classify(eventual_walk(seq).value)


def _with_eps(x: Fraction, eps: Eps) -> RestrictedValue:
    d = Dyadic.from_fraction(x)
    if eps is Eps.ZERO:
        return _tidy(d)
    return DyadicEps(d, ABOVE if eps is Eps.PLUS else BELOW)


def _is_ordinal_block(q: RestrictedValue, block: Block) -> bool:
    if not isinstance(block.tail, ConstantTail):
        return False
    vals = [q, *block.prefix, block.tail.value]
    return all(isinstance(v, OrdinalVal) for v in vals)


def _block_limit(q: RestrictedValue, block: Block) -> RestrictedValue:
    if _is_ordinal_block(q, block):
        return _ordinal_block_limit(q, block)
    return _dyadic_block_limit(q, block)


def ssum(bound: Ordinal, seq: SummandSeq, max_blocks: int = MAX_BLOCKS) -> RestrictedValue:
    """The s-sum of ``seq`` over the indices below ``bound``."""
    k_end, j_end = split_index(bound)
    if k_end > max_blocks:
        raise UnsupportedShape(f"index bounds stop at w*{max_blocks} + finite")
    total: RestrictedValue = OrdinalVal(ZERO)
    for k in range(k_end):
        total = _block_limit(total, seq.block(k))
    block = seq.block(k_end)
    for j in range(j_end):
        total = add_restricted(block.at(j), total)
    return total


# ---------------------------------------------------------------------------
# rearrangements


def _cycle_map(perm: Iterable[Sequence[Ordinal]]) -> Dict[Tuple[int, int], Tuple[int, int]]:
    """``target -> source`` for disjoint cycles; ``(a b c)`` moves a to b, b to c, c to a."""
    moves: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for cycle in perm:
        cycle = [split_index(x) for x in cycle]
        if len(set(cycle)) != len(cycle):
            raise ValueError("a cycle repeats a position")
        for i, src in enumerate(cycle):
            dst = cycle[(i + 1) % len(cycle)]
            if dst in moves:
                raise ValueError("cycles must be disjoint")
            moves[dst] = src
    return moves


def permute_finite(seq: SummandSeq, perm: Iterable[Sequence[Ordinal]]) -> SummandSeq:
    """Rearrange finitely many summands.

    ``perm`` lists disjoint cycles of ordinal positions; a transposition is a
    cycle of length two.
    """
    moves = _cycle_map(perm)
    if not moves:
        return seq
    n_blocks = max(len(seq.blocks), 1 + max(k for k, _ in moves))
    blocks = []
    for k in range(n_blocks):
        b = seq.block(k)
        reach = max([j + 1 for kk, j in moves if kk == k], default=0)
        prefix = [b.at(j) for j in range(max(reach, len(b.prefix)))]
        for (kk, j), (sk, sj) in moves.items():
            if kk == k:
                prefix[j] = seq.block(sk).at(sj)
        blocks.append(replace(b, prefix=tuple(prefix)))
    return SummandSeq(tuple(blocks))


def swap(a: Ordinal, b: Ordinal) -> List[Tuple[Ordinal, Ordinal]]:
    return [(a, b)]
