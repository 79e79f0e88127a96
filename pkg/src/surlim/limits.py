"""String limits of sequences of sign expansions.

Sequences are finitely presented by descriptors.  Explicit and eventually
constant descriptors are trivial.  ``Parametric`` families are analysed
symbolically: every run length is a monotone ``ParamOrdinal``, so each
prefix sum of run lengths is monotone too, and the eventual behaviour of a
place is read off the suprema of those prefix sums.  ``Oracle`` descriptors
carry stabilization claims that are spot-checked on sampled rows.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .ordinal import (
    MONOTONE_PROBE,
    ZERO,
    Eventual,
    Ordinal,
    OrdinalError,
    ParamOrdinal,
    _cmp,
    as_param,
    ord_left_sub,
    ord_min,
    param_eventual_cmp,
    param_is_eventually_constant,
    param_sup,
)
from .sign import (
    EMPTY,
    MINUS,
    PLUS,
    SignExpansion,
    SignQuery,
    concat,
    first_difference,
    normalize,
    sign_at,
    to_ordinal,
    truncate,
)

MAX_PERIOD = 4
PROBE_ROWS = 64
PROBE_PLACES = 32


def probe_budget() -> int:
    env = os.environ.get("SURLIM_PROBE_BUDGET")
    return int(env) if env else PROBE_ROWS


class DescriptorError(ValueError):
    pass


class OracleInconsistency(ValueError):
    pass


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class Template:
    """A row shape ``[(sign, length(n)), ...]`` with parametric run lengths."""

    runs: Tuple[Tuple[int, ParamOrdinal], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "runs", tuple((s, as_param(l)) for s, l in self.runs)
        )
        for s, _ in self.runs:
            if s not in (PLUS, MINUS):
                raise DescriptorError(f"bad sign {s!r}")

    @classmethod
    def const(cls, s: SignExpansion) -> "Template":
        return cls(tuple((sign, as_param(l)) for sign, l in s.runs))

    def row(self, k: int) -> SignExpansion:
        return normalize((s, l.eval(k)) for s, l in self.runs)

    def check_monotone(self, probe: Optional[int] = None) -> None:
        for _, l in self.runs:
            l.check_monotone(probe)

    def substitute(self, A: int, B: int) -> "Template":
        return Template(tuple((s, l.substitute(A, B)) for s, l in self.runs))

    def __add__(self, other: "Template") -> "Template":
        return Template(self.runs + other.runs)

    def __str__(self):
        return "[" + ", ".join(("+" if s > 0 else "-") + str(l) for s, l in self.runs) + "]"


@dataclass(frozen=True)
class Explicit:
    rows: Tuple[SignExpansion, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise DescriptorError("explicit descriptor needs at least one row")

    infinite = False

    def row(self, n: int) -> SignExpansion:
        return self.rows[n]


@dataclass(frozen=True)
class EventuallyConstant:
    prefix: Tuple[SignExpansion, ...]
    tail: SignExpansion

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))

    infinite = True

    def row(self, n: int) -> SignExpansion:
        return self.prefix[n] if n < len(self.prefix) else self.tail


@dataclass(frozen=True)
class Parametric:
    """Row ``n`` is ``branches[n % p]`` evaluated at ``n // p``."""

    branches: Tuple[Template, ...]
    max_period: Optional[int] = MAX_PERIOD
    check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if not self.branches:
            raise DescriptorError("parametric descriptor needs a branch")
        if self.max_period is not None and len(self.branches) > self.max_period:
            raise DescriptorError(
                f"period {len(self.branches)} exceeds the cap of {self.max_period}"
            )
        if self.check:
            for b in self.branches:
                b.check_monotone()

    infinite = True

    @property
    def period(self) -> int:
        return len(self.branches)

    def row(self, n: int) -> SignExpansion:
        p = len(self.branches)
        return self.branches[n % p].row(n // p)

    @cached_property
    def profiles(self) -> Tuple["_Profile", ...]:
        return tuple(_profile(b) for b in self.branches)


class Oscillates:
    def __repr__(self):
        return "Oscillates"


OSCILLATES = Oscillates()


@dataclass(frozen=True)
class StabilizesAt:
    index: int


Claim = Union[StabilizesAt, Oscillates]


@dataclass(frozen=True)
class Oracle:
    """Rows from a generator plus per-place stabilization claims.

    Only finite places below ``places`` are probed; each claim is checked on
    ``probe_budget`` rows past the claimed index.
    """

    gen: Callable[[int], SignExpansion]
    stabilization: Callable[[int], Claim]
    probe_budget: int = field(default_factory=probe_budget)
    places: int = PROBE_PLACES

    infinite = True

    def row(self, n: int) -> SignExpansion:
        return self.gen(n)


@dataclass(frozen=True)
class Patched:
    """An infinite descriptor with finitely many rows replaced."""

    base: Union[EventuallyConstant, Parametric, Oracle]
    overrides: Tuple[Tuple[int, SignExpansion], ...]

    infinite = True

    def row(self, n: int) -> SignExpansion:
        d = dict(self.overrides)
        return d[n] if n in d else self.base.row(n)


SeqDescriptor = Union[Explicit, EventuallyConstant, Parametric, Oracle, Patched]


class Variant(str, enum.Enum):
    SLIM = "slim"
    SLIM_DIAMOND = "slim_diamond"
    F_LIMIT = "f_limit"
    SLIM_STAR = "slim_star"


class Status(str, enum.Enum):
    CERTIFIED = "certified"
    PROBED = "probed"


@dataclass(frozen=True)
class LimitOutcome:
    value: SignExpansion
    cut_place: Optional[Ordinal]
    full: bool
    status: Status
    variant_used: Variant

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "cut_place": None if self.cut_place is None else str(self.cut_place),
            "full": self.full,
            "status": self.status.value,
            "variant_used": self.variant_used.value,
        }


# ---------------------------------------------------------------------------
# symbolic analysis of one monotone branch


@dataclass(frozen=True)
class _Profile:
    signs: Tuple[int, ...]
    lengths: Tuple[ParamOrdinal, ...]  # eventual runs, merged
    prefix_sups: Tuple[Ordinal, ...]
    prefix_const: Tuple[bool, ...]
    eventual: SignExpansion  # column-wise eventual values
    boundary: Optional[Ordinal]  # None when rows are eventually constant
    birthday_sup: Ordinal


def _profile(t: Template) -> _Profile:
    signs: List[int] = []
    lengths: List[ParamOrdinal] = []
    for s, l in t.runs:
        e = l.enf()
        if not e.terms:
            continue
        if signs and signs[-1] == s:
            lengths[-1] = lengths[-1] + e
        else:
            signs.append(s)
            lengths.append(e)
    sups, consts = [], []
    ps = ParamOrdinal()
    for l in lengths:
        ps = ps + l
        sups.append(param_sup(ps, check=False))
        consts.append(param_is_eventually_constant(ps))
    raw = []
    prev = ZERO
    for s, sup in zip(signs, sups):
        raw.append((s, ord_left_sub(prev, sup)))
        prev = sup
    eventual = normalize(raw)
    boundary = None
    for sup, c in zip(sups, consts):
        if not c:
            boundary = sup
            break
    return _Profile(
        tuple(signs), tuple(lengths), tuple(sups), tuple(consts),
        eventual, boundary, sups[-1] if sups else ZERO,
    )


def _first_disagreement(strings: Sequence[SignExpansion]) -> Optional[Ordinal]:
    best = None
    for s in strings[1:]:
        d = first_difference(strings[0], s)
        if d is not None and (best is None or _cmp(d[0], best) < 0):
            best = d[0]
    return best


def _omin(*xs: Optional[Ordinal]) -> Optional[Ordinal]:
    vals = [x for x in xs if x is not None]
    if not vals:
        return None
    out = vals[0]
    for v in vals[1:]:
        out = ord_min(out, v)
    return out


def eventual_defined_bound(seq: SeqDescriptor) -> Optional[Ordinal]:
    """Least place that is not eventually defined in the rows.

    Every place below it is defined in all rows from some index on.
    Returns ``None`` for oracle descriptors, whose rows are not analysed.
    """
    if isinstance(seq, Explicit):
        return seq.rows[-1].birthday
    if isinstance(seq, EventuallyConstant):
        return seq.tail.birthday
    if isinstance(seq, Patched):
        return eventual_defined_bound(seq.base)
    if isinstance(seq, Parametric):
        return _omin(*(p.birthday_sup for p in seq.profiles))
    return None


def _parametric_limit(seq: Parametric, diamond: bool) -> LimitOutcome:
    profs = seq.profiles
    evs = [p.eventual for p in profs]
    disagree = _first_disagreement(evs)
    boundary = None if diamond else _omin(*(p.boundary for p in profs))
    cut = _omin(disagree, boundary)
    value = evs[0] if cut is None else truncate(evs[0], cut)
    bound = eventual_defined_bound(seq)
    cut_place = cut if cut is not None and _cmp(cut, bound) < 0 else None
    return LimitOutcome(
        value, cut_place, cut_place is None, Status.CERTIFIED,
        Variant.SLIM_DIAMOND if diamond else Variant.SLIM,
    )


def _finite_signs(s: SignExpansion, k: int) -> List[int]:
    out: List[int] = []
    for sign, l in s.runs:
        if l.is_finite():
            out.extend([sign] * min(int(l), k - len(out)))
        else:
            out.extend([sign] * (k - len(out)))
        if len(out) >= k:
            break
    return out[:k] + [0] * (k - len(out))


def _oracle_limit(seq: Oracle, variant: Variant) -> LimitOutcome:
    cache: Dict[int, List[int]] = {}

    def signs(n: int) -> List[int]:
        if n not in cache:
            cache[n] = _finite_signs(seq.gen(n), seq.places)
        return cache[n]

    out: List[int] = []
    cut = None
    N = 0
    for p in range(seq.places):
        claim = seq.stabilization(p)
        if isinstance(claim, Oscillates):
            window = {tuple(signs(n)[:p + 1]) for n in range(N, N + seq.probe_budget)}
            if len(window) < 2:
                raise OracleInconsistency(
                    f"place {p} is claimed to oscillate but rows {N}..{N + seq.probe_budget - 1} agree"
                )
            cut = p
            break
        # claims cover the place and every earlier one, so both variants coincide
        N = max(N, claim.index)
        ref = signs(N)
        for n in range(N, N + seq.probe_budget):
            if signs(n)[:p + 1] != ref[:p + 1]:
                raise OracleInconsistency(
                    f"row {n} disagrees with row {N} at or before place {p}"
                )
        if ref[p] == 0:
            break
        out.append(ref[p])
    value = SignExpansion.from_signs(out)
    cut_place = None if cut is None else Ordinal.nat(cut)
    return LimitOutcome(value, cut_place, cut is None, Status.PROBED, variant)


def slim(seq: SeqDescriptor) -> LimitOutcome:
    if isinstance(seq, Explicit):
        return LimitOutcome(seq.rows[-1], None, True, Status.CERTIFIED, Variant.SLIM)
    if isinstance(seq, EventuallyConstant):
        return LimitOutcome(seq.tail, None, True, Status.CERTIFIED, Variant.SLIM)
    if isinstance(seq, Parametric):
        return _parametric_limit(seq, diamond=False)
    if isinstance(seq, Oracle):
        return _oracle_limit(seq, Variant.SLIM)
    if isinstance(seq, Patched):
        # finitely many rows never affect eventual behaviour
        return slim(seq.base)
    raise DescriptorError(f"unsupported descriptor {type(seq).__name__}")


def slim_diamond(seq: SeqDescriptor) -> LimitOutcome:
    if isinstance(seq, (Explicit, EventuallyConstant)):
        out = slim(seq)
        return LimitOutcome(out.value, None, True, out.status, Variant.SLIM_DIAMOND)
    if isinstance(seq, Parametric):
        return _parametric_limit(seq, diamond=True)
    if isinstance(seq, Oracle):
        return _oracle_limit(seq, Variant.SLIM_DIAMOND)
    if isinstance(seq, Patched):
        return slim_diamond(seq.base)
    raise DescriptorError(f"unsupported descriptor {type(seq).__name__}")


def full_limit_check(seq: SeqDescriptor, out: LimitOutcome) -> bool:
    """True iff every place eventually defined in the rows is kept in ``out``."""
    bound = eventual_defined_bound(seq)
    if bound is None:
        return out.cut_place is None
    return _cmp(out.value.birthday, bound) >= 0


# ---------------------------------------------------------------------------
# slim*


def slim_star(seq: SeqDescriptor) -> LimitOutcome:
    """Runwise limit on shorthands: liminf of positive run lengths, limsup
    of negative ones; the first run position of mixed kind ends the result."""
    if isinstance(seq, (Explicit, EventuallyConstant)):
        out = slim(seq)
        return LimitOutcome(out.value, None, True, out.status, Variant.SLIM_STAR)
    if isinstance(seq, Patched):
        return slim_star(seq.base)
    if not isinstance(seq, Parametric):
        raise DescriptorError("slim* needs a symbolic descriptor")
    profs = seq.profiles
    runs = []
    discarded = False
    i = 0
    while True:
        have = [i < len(p.signs) for p in profs]
        if not any(have):
            break
        if not all(have) or len({p.signs[i] for p in profs}) != 1:
            discarded = True
            break
        length = _omin(*(param_sup(p.lengths[i], check=False) for p in profs))
        runs.append((profs[0].signs[i], length))
        i += 1
    value = normalize(runs)
    cut = value.birthday if discarded else None
    return LimitOutcome(value, cut, cut is None, Status.CERTIFIED, Variant.SLIM_STAR)


# ---------------------------------------------------------------------------
# filters


@dataclass(frozen=True)
class Frechet:
    pass


@dataclass(frozen=True)
class Principal:
    indices: frozenset

    def __post_init__(self):
        object.__setattr__(self, "indices", frozenset(self.indices))
        if not self.indices:
            raise DescriptorError("principal filter needs a nonempty set")


@dataclass(frozen=True)
class EventualResidue:
    """Filter generated by ``{n >= b : n % modulus in residues}`` for all b."""

    modulus: int
    residues: frozenset

    def __post_init__(self):
        object.__setattr__(self, "residues", frozenset(r % self.modulus for r in self.residues))
        if not self.residues:
            raise DescriptorError("empty residue set")


@dataclass(frozen=True)
class Base:
    """Filter generated by finitely many sets, closed upward."""

    sets: Tuple[Union[frozenset, EventualResidue], ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        if not self.sets:
            raise DescriptorError("filter base is empty")
        self.reduce()  # raises without the finite-intersection property

    def reduce(self) -> Union[Principal, EventualResidue]:
        finite = [s for s in self.sets if isinstance(s, frozenset)]
        tails = [s for s in self.sets if isinstance(s, EventualResidue)]
        q, res = 1, None
        for t in tails:
            newq = q * t.modulus // math.gcd(q, t.modulus)
            cand = {
                r for r in range(newq)
                if r % t.modulus in t.residues and (res is None or r % q in res)
            }
            q, res = newq, cand
        if finite:
            x = frozenset.intersection(*map(frozenset, finite))
            if res is not None:
                x = frozenset(i for i in x if i % q in res)
            if not x:
                raise DescriptorError("filter base lacks the finite-intersection property")
            return Principal(x)
        if not res:
            raise DescriptorError("filter base lacks the finite-intersection property")
        return EventualResidue(q, frozenset(res))


FilterDescriptor = Union[Frechet, Principal, Base, EventualResidue]


def _common_prefix(rows: Sequence[SignExpansion]) -> Tuple[SignExpansion, Optional[Ordinal]]:
    d = _first_disagreement(list(rows))
    if d is None:
        return rows[0], None
    return truncate(rows[0], d), d


def f_limit(filt: FilterDescriptor, seq: SeqDescriptor) -> LimitOutcome:
    if isinstance(filt, Base):
        filt = filt.reduce()
    if isinstance(filt, Frechet):
        if not getattr(seq, "infinite", False):
            raise DescriptorError("the Frechet filter needs an infinite index set")
        out = slim(seq)
        return LimitOutcome(out.value, out.cut_place, out.full, out.status, Variant.F_LIMIT)
    if isinstance(filt, Principal):
        idx = sorted(filt.indices)
        if isinstance(seq, Explicit) and idx[-1] >= len(seq.rows):
            raise DescriptorError("principal filter reaches past the explicit rows")
        rows = [seq.row(i) for i in idx]
        value, cut = _common_prefix(rows)
        return LimitOutcome(value, cut, cut is None, Status.CERTIFIED, Variant.F_LIMIT)
    if isinstance(filt, EventualResidue):
        if not getattr(seq, "infinite", False):
            raise DescriptorError("a residue filter needs an infinite index set")
        out = slim(subsequence(seq, Residues(filt.modulus, tuple(sorted(filt.residues)))))
        return LimitOutcome(out.value, out.cut_place, out.full, out.status, Variant.F_LIMIT)
    raise DescriptorError(f"unknown filter {filt!r}")


# ---------------------------------------------------------------------------
# subsequences and row transforms


@dataclass(frozen=True)
class Residues:
    """Rows ``n`` with ``n % modulus`` in ``offsets``, in increasing order."""

    modulus: int
    offsets: Tuple[int, ...]

    def __post_init__(self):
        offs = tuple(sorted(set(self.offsets)))
        if self.modulus < 1 or not offs or offs[0] < 0 or offs[-1] >= self.modulus:
            raise DescriptorError("bad residue selector")
        object.__setattr__(self, "offsets", offs)

    def index(self, t: int) -> int:
        r = len(self.offsets)
        return self.modulus * (t // r) + self.offsets[t % r]

    def first_at_or_after(self, n: int) -> int:
        r = len(self.offsets)
        t = (n // self.modulus) * r
        while self.index(t) < n:
            t += 1
        return t


def stride(k: int, offset: int = 0) -> Residues:
    if not 0 <= offset < k:
        # offsets beyond one period shift the start; only the tail matters
        offset %= k
    return Residues(k, (offset,))


EVEN = Residues(2, (0,))
ODD = Residues(2, (1,))


def subsequence(seq: SeqDescriptor, selector: Residues) -> SeqDescriptor:
    if isinstance(seq, Explicit):
        raise DescriptorError("subsequences need an infinite descriptor")
    if isinstance(seq, Patched):
        seq = seq.base
    if isinstance(seq, EventuallyConstant):
        pre = []
        t = 0
        while selector.index(t) < len(seq.prefix):
            pre.append(seq.prefix[selector.index(t)])
            t += 1
        return EventuallyConstant(tuple(pre), seq.tail)
    if isinstance(seq, Parametric):
        p, q, r = seq.period, selector.modulus, len(selector.offsets)
        p1 = p // math.gcd(q, p)
        branches = []
        for u0 in range(p1):
            for off in selector.offsets:
                base = q * u0 + off
                b = seq.branches[base % p]
                branches.append(b.substitute(q * p1 // p, base // p))
        return Parametric(tuple(branches), max_period=None, check=False)
    if isinstance(seq, Oracle):
        def claim(pl, _seq=seq):
            c = _seq.stabilization(pl)
            if isinstance(c, Oscillates):
                return c
            return StabilizesAt(selector.first_at_or_after(c.index))
        return Oracle(lambda t: seq.gen(selector.index(t)), claim, seq.probe_budget, seq.places)
    raise DescriptorError(f"unsupported descriptor {type(seq).__name__}")


def expand_period(seq: Parametric, period: int) -> Parametric:
    """Same rows, presented with ``period`` branches (a multiple of the old)."""
    p = seq.period
    if period % p:
        raise DescriptorError("new period must be a multiple of the old one")
    m = period // p
    branches = [seq.branches[i % p].substitute(m, i // p) for i in range(period)]
    return Parametric(tuple(branches), max_period=None, check=False)


def map_rows(seq: SeqDescriptor, left: SignExpansion = EMPTY, right: SignExpansion = EMPTY) -> SeqDescriptor:
    """Descriptor of ``n -> left + row(n) + right`` (concatenation)."""
    if isinstance(seq, Explicit):
        return Explicit(tuple(concat(concat(left, r), right) for r in seq.rows))
    if isinstance(seq, EventuallyConstant):
        f = lambda r: concat(concat(left, r), right)
        return EventuallyConstant(tuple(map(f, seq.prefix)), f(seq.tail))
    if isinstance(seq, Parametric):
        lt, rt = Template.const(left), Template.const(right)
        return Parametric(tuple(lt + b + rt for b in seq.branches), max_period=None, check=False)
    raise DescriptorError(f"cannot transform {type(seq).__name__}")


def concat_rows(a: SeqDescriptor, b: SeqDescriptor) -> SeqDescriptor:
    """Descriptor of ``n -> a(n) + b(n)``."""
    if isinstance(a, Parametric) and isinstance(b, Parametric):
        P = a.period * b.period // math.gcd(a.period, b.period)
        ea, eb = expand_period(a, P), expand_period(b, P)
        return Parametric(
            tuple(x + y for x, y in zip(ea.branches, eb.branches)), max_period=None, check=False
        )
    if isinstance(a, Explicit) and isinstance(b, Explicit):
        if len(a.rows) != len(b.rows):
            raise DescriptorError("explicit descriptors of different lengths")
        return Explicit(tuple(concat(x, y) for x, y in zip(a.rows, b.rows)))
    raise DescriptorError("row-wise concatenation needs two parametric or two explicit descriptors")


def permute_rows(seq: SeqDescriptor, perm: Dict[int, int]) -> SeqDescriptor:
    """Rows rearranged by a finitely supported bijection: new row i is old row perm[i]."""
    if sorted(perm) != sorted(perm.values()):
        raise DescriptorError("not a permutation of its support")
    if isinstance(seq, Explicit):
        rows = list(seq.rows)
        return Explicit(tuple(rows[perm.get(i, i)] for i in range(len(rows))))
    return Patched(seq if not isinstance(seq, Patched) else seq.base,
                   tuple((i, seq.row(j)) for i, j in perm.items()))


def blocks_limit(seq: SeqDescriptor, sizes: Sequence[int]) -> LimitOutcome:
    """slim over blocks of a partition of the index set into convex pieces.

    ``sizes`` repeats periodically; each block is finite, so its own limit is
    its last row and the outer limit runs over the block ends.
    """
    if any(s < 1 for s in sizes):
        raise DescriptorError("block sizes must be positive")
    if isinstance(seq, Explicit):
        ends, pos, i = [], 0, 0
        while pos < len(seq.rows):
            pos = min(pos + sizes[i % len(sizes)], len(seq.rows))
            ends.append(seq.rows[pos - 1])
            i += 1
        return slim(Explicit(tuple(ends)))
    total = sum(sizes)
    ends, acc = [], 0
    for s in sizes:
        acc += s
        ends.append(acc - 1)
    return slim(subsequence(seq, Residues(total, tuple(ends))))


# ---------------------------------------------------------------------------
# ordinals


def ord_liminf(seq: SeqDescriptor) -> Ordinal:
    """Inferior limit of an ordinal-valued sequence (rows all plus)."""
    if isinstance(seq, Explicit):
        for r in seq.rows:
            to_ordinal(r)
        return to_ordinal(seq.rows[-1])
    if isinstance(seq, EventuallyConstant):
        return to_ordinal(seq.tail)
    if isinstance(seq, Patched):
        return ord_liminf(seq.base)
    if isinstance(seq, Parametric):
        sups = []
        for b in seq.branches:
            if any(s != PLUS for s, _ in b.runs):
                raise DescriptorError("ordinal sequences have only plus runs")
            total = ParamOrdinal()
            for _, l in b.runs:
                total = total + l
            sups.append(param_sup(total, check=False))
        return _omin(*sups)
    raise DescriptorError("unsupported descriptor shape for liminf")


# ---------------------------------------------------------------------------
# generic alphabet engine


@dataclass(frozen=True)
class GenericMatrix:
    alphabet: frozenset
    rows: Tuple[Tuple, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if not self.rows:
            raise DescriptorError("matrix needs a row")
        for r in self.rows:
            if not set(r) <= self.alphabet:
                raise DescriptorError("row uses symbols outside the alphabet")


def generic_slim(matrix: GenericMatrix, variant: Variant = Variant.SLIM):
    """Returns ``(string, cut)`` where ``cut`` is the first discarded column."""
    rows = matrix.rows
    if variant == Variant.SLIM:
        return rows[-1], None
    if variant != Variant.SLIM_DIAMOND:
        raise DescriptorError(f"variant {variant} not available on generic matrices")
    k = 0
    while all(k < len(r) for r in rows) and len({r[k] for r in rows}) == 1:
        k += 1
    cut = k if any(k < len(r) for r in rows) else None
    return rows[0][:k], cut


# ---------------------------------------------------------------------------
# finite-place stabilization of parametric families


def parametric_stabilization(seq: Parametric, place: int) -> Claim:
    """Least index from which all rows agree on places ``0..place``."""
    g = Ordinal.nat(place)
    if _first_disagreement([truncate(p.eventual, Ordinal.nat(place + 1)) for p in seq.profiles]) is not None:
        return OSCILLATES
    P = seq.period
    worst = 0
    for bi, b in enumerate(seq.branches):
        k_needed = 0
        ps = ParamOrdinal()
        for _, l in b.runs:
            ps = ps + l
            verdict, witness = param_eventual_cmp(ps, g)
            if verdict == Eventual.GREATER:
                k_needed = max(k_needed, witness)
            else:
                # bounded by a natural number, hence eventually constant
                sup = param_sup(ps, check=False)
                k = 0
                while ps.eval(k) != sup:
                    k += 1
                k_needed = max(k_needed, k)
        worst = max(worst, P * k_needed + bi)
    return StabilizesAt(worst)


def as_oracle(seq: Parametric, places: int = PROBE_PLACES) -> Oracle:
    return Oracle(seq.row, lambda p: parametric_stabilization(seq, p), probe_budget(), places)
