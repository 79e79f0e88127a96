"""Classical limits of real sequences against their string limits.

A convergent real sequence has ``lim r_n = slim r_n + eps`` with ``eps`` in
``{0, 1/w, -1/w}``.  ``verify`` checks this on a certified sequence twice:

* symbolically, by an eventual bisection walk that decides, place by place,
  where the rows eventually sit relative to the current simplest dyadic;
* on the rows themselves, through an oracle descriptor whose stabilization
  indices come from the convergence modulus and are validated by sampling.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .limits import (
    OSCILLATES,
    Claim,
    Oracle,
    OracleInconsistency,
    StabilizesAt,
    probe_budget,
    slim,
)
from .ordinal import OMEGA, ONE
from .real_bridge import (
    ABOVE,
    BELOW,
    Classification,
    Dyadic,
    Eps,
    RealStream,
    StreamInconsistency,
    add_eps,
    decompose,
    dyadic_to_se,
    rational_se_prefix,
    real_to_se_prefix,
    simplest_dyadic_between,
)
from .sign import EMPTY, MINUS, PLUS, SignExpansion, concat, truncate

EQUAL = "equal"
MIXED = "mixed"
SIDES = (ABOVE, BELOW, EQUAL, MIXED)

DEFAULT_DEPTH = 24


@dataclass(frozen=True)
class Side:
    """Where the rows eventually sit relative to a dyadic limit.

    ``above``/``below``/``equal`` hold for every row from ``from_index`` on;
    ``mixed`` means infinitely many rows fall on two different sides.
    """

    kind: str
    from_index: int = 0

    def __post_init__(self):
        if self.kind not in SIDES:
            raise ValueError(f"side must be one of {SIDES}")


@dataclass(frozen=True)
class RealSequence:
    """A real sequence with a convergence or divergence certificate.

    Rows are ``term(n)`` plus an optional infinitesimal ``eps(n)``; the eps
    part lets the same machinery handle finite surreals born by day w.
    ``modulus(m)`` bounds where the real parts settle within ``2**-m``;
    ``divergence(M)`` (with ``direction`` +1 or -1) bounds where they pass
    ``+-M`` for good.
    """

    name: str
    term: Callable[[int], Fraction]
    modulus: Optional[Callable[[int], int]] = None
    limit: Optional[Fraction] = None
    side: Optional[Side] = None
    direction: int = 0
    divergence: Optional[Callable[[int], int]] = None
    eps: Optional[Callable[[int], Eps]] = None
    description: str = ""

    def __post_init__(self):
        if (self.modulus is None) == (self.divergence is None):
            raise ValueError("give exactly one of a modulus or a divergence bound")
        if self.divergence is not None and self.direction not in (1, -1):
            raise ValueError("divergent sequences need direction +1 or -1")

    @property
    def divergent(self) -> bool:
        return self.divergence is not None

    def stream(self) -> RealStream:
        return RealStream(lambda n: Fraction(self.term(n)), self.modulus, self.limit, self.name)

    def row_eps(self, n: int) -> Eps:
        return self.eps(n) if self.eps is not None else Eps.ZERO

    def row_se(self, n: int, places: int) -> SignExpansion:
        """First ``places`` places of row ``n`` (exact when the row is finite)."""
        q = Fraction(self.term(n))
        e = self.row_eps(n)
        if q.denominator & (q.denominator - 1) == 0:
            d = Dyadic.from_fraction(q)
            if e is Eps.PLUS:
                return add_eps(d, ABOVE)
            if e is Eps.MINUS:
                return add_eps(d, BELOW)
            return dyadic_to_se(d)
        if e is not Eps.ZERO:
            raise ValueError("an infinitesimal on a nondyadic row leaves the finite classes")
        return rational_se_prefix(q, places)

    def row_side(self, n: int, r: Fraction) -> str:
        d = Fraction(self.term(n)) - r
        if d > 0:
            return ABOVE
        if d < 0:
            return BELOW
        e = self.row_eps(n)
        return {Eps.PLUS: ABOVE, Eps.MINUS: BELOW, Eps.ZERO: EQUAL}[e]


# ---------------------------------------------------------------------------
# the eventual bisection walk


@dataclass(frozen=True)
class Walk:
    """Outcome of the symbolic walk.

    ``value`` is exact unless ``truncated``, in which case it is the prefix
    of an expansion of length w.  ``claims[p]`` says from which row on place
    ``p`` (and all before it) agrees with ``value``.
    """

    value: SignExpansion
    truncated: bool
    cut_place: Optional[int]
    claims: Tuple[Claim, ...]
    limit_dyadic: Optional[Dyadic]


def _index_for_margin(seq: RealSequence, margin: Optional[Fraction]) -> int:
    """A row index past which every real part lies within ``margin`` of the limit."""
    if margin is None:
        return 0
    m = 0
    while Fraction(1, 1 << m) >= margin:
        m += 1
    return seq.modulus(m)


def _margin(seq: RealSequence, lo, hi) -> Optional[Fraction]:
    """A positive lower bound on the distance from the limit to ``lo``/``hi``."""
    if lo is None and hi is None:
        return None
    if seq.limit is not None:
        r = seq.limit
        gaps = [g for g in ((r - lo) if lo is not None else None,
                            (hi - r) if hi is not None else None) if g is not None]
        return min(gaps)
    stream = seq.stream()
    for k in range(1, 512):
        a = Fraction(stream.approx(stream.modulus(k)))
        gaps = [g for g in ((a - lo) if lo is not None else None,
                            (hi - a) if hi is not None else None) if g is not None]
        low = min(gaps) - Fraction(1, 1 << k)
        if low > 0:
            return low
    raise StreamInconsistency(f"{seq.name}: limit cannot be separated from a bisection bound")


def _divergent_walk(seq: RealSequence, places: int) -> Walk:
    sign = PLUS if seq.direction > 0 else MINUS
    # place p carries the sign once |r_n| > p
    claims = tuple(StabilizesAt(seq.divergence(p + 1)) for p in range(places))
    return Walk(SignExpansion(((sign, OMEGA),)), False, None, claims, None)


def eventual_walk(seq: RealSequence, places: int = DEFAULT_DEPTH) -> Walk:
    if seq.divergent:
        return _divergent_walk(seq, places)
    stream = seq.stream()
    lo = hi = None
    c = Fraction(0)
    signs: List[int] = []
    claims: List[Claim] = []
    N = 0
    while True:
        if seq.limit is None and len(signs) >= places:
            return Walk(SignExpansion.from_signs(signs), True, None, tuple(claims), None)
        s = stream.sign_vs(c)
        if s == 0:
            break
        if s > 0:
            lo = c
        else:
            hi = c
        signs.append(PLUS if s > 0 else MINUS)
        N = max(N, _index_for_margin(seq, _margin(seq, lo, hi)))
        claims.append(StabilizesAt(N))
        c = simplest_dyadic_between(lo, hi).value
        if seq.limit is not None and seq.limit.denominator & (seq.limit.denominator - 1) and len(signs) >= places:
            return Walk(SignExpansion.from_signs(signs), True, None, tuple(claims), None)

    # the limit is the dyadic c, reached at place len(signs)
    r = c
    d = Dyadic.from_fraction(r)
    head = SignExpansion.from_signs(signs)
    side = seq.side
    if side is None:
        raise ValueError(f"{seq.name}: a dyadic limit needs a side certificate")
    if side.kind == MIXED:
        claims.append(OSCILLATES)
        return Walk(head, False, len(signs), tuple(claims), d)
    N = max(N, side.from_index)
    if side.kind == EQUAL:
        claims.append(StabilizesAt(N))
        return Walk(head, False, None, tuple(claims), d)
    up = side.kind == ABOVE
    value = add_eps(d, ABOVE if up else BELOW)
    # the rows must stay strictly between r and the successive simplest
    # dyadics on the chosen side
    bound = hi if up else lo
    while len(claims) < places:
        if bound is not None:
            N = max(N, _index_for_margin(seq, abs(bound - r)))
        claims.append(StabilizesAt(N))
        bound = simplest_dyadic_between(r, bound).value if up else simplest_dyadic_between(bound, r).value
    return Walk(value, False, None, tuple(claims), d)


def walk_oracle(seq: RealSequence, walk: Walk, places: int, budget: Optional[int] = None) -> Oracle:
    """Oracle descriptor over the actual rows, with the walk's claims."""
    claims = walk.claims

    def stabilization(p: int) -> Claim:
        if p < len(claims):
            return claims[p]
        return claims[-1] if claims else StabilizesAt(0)

    return Oracle(
        gen=lambda n: seq.row_se(n, places),
        stabilization=stabilization,
        probe_budget=budget if budget is not None else probe_budget(),
        places=places,
    )


# ---------------------------------------------------------------------------
# verification


@dataclass
class Report:
    name: str
    slim: str
    slim_truncated: bool
    limit: str
    epsilon: str
    slim_offset: str
    classification: str
    depth: int
    status: str
    passed: bool
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "slim": self.slim,
            "slim_truncated": self.slim_truncated,
            "limit": self.limit,
            "epsilon": self.epsilon,
            "slim_offset": self.slim_offset,
            "classification": self.classification,
            "depth": self.depth,
            "status": self.status,
            "result": "PASS" if self.passed else "FAIL",
            "notes": list(self.notes),
        }


def _check_certificates(seq: RealSequence, walk: Walk, budget: int) -> None:
    if seq.divergent:
        for M in range(1, 12):
            N = seq.divergence(M)
            for n in range(N, N + budget):
                if seq.direction * Fraction(seq.term(n)) < M:
                    raise StreamInconsistency(f"{seq.name}: row {n} has not passed {seq.direction * M}")
        return
    stream = seq.stream()
    for m in range(0, 24):
        stream.check(m, probe=budget)
    if walk.limit_dyadic is None or seq.side is None:
        return
    r = walk.limit_dyadic.value
    if seq.side.kind == MIXED:
        seen = {seq.row_side(n, r) for n in range(seq.side.from_index, seq.side.from_index + budget)}
        if len(seen) < 2:
            raise StreamInconsistency(f"{seq.name}: rows are not on mixed sides of {r}")
        return
    for n in range(seq.side.from_index, seq.side.from_index + budget):
        if seq.row_side(n, r) != seq.side.kind:
            raise StreamInconsistency(f"{seq.name}: row {n} is not {seq.side.kind} {r}")


def verify(seq: RealSequence, depth: int = DEFAULT_DEPTH, budget: Optional[int] = None) -> Report:
    """Check ``lim = slim + eps`` for a certified sequence.

    Raises ``StreamInconsistency`` when a certificate fails on sampled rows.
    """
    budget = budget if budget is not None else probe_budget()
    walk = eventual_walk(seq, depth)
    _check_certificates(seq, walk, budget)
    notes: List[str] = []
    try:
        probed = slim(walk_oracle(seq, walk, depth, budget))
    except OracleInconsistency as exc:
        probed = None
        notes.append(f"row check failed: {exc}")

    sym = walk.value
    if probed is not None and probed.value != truncate(sym, depth):
        notes.append(f"rows give {probed.value}, walk gives {truncate(sym, depth)}")
    walk_cut = walk.cut_place if walk.cut_place is not None and walk.cut_place < depth else None
    if probed is not None and (probed.cut_place is None) != (walk_cut is None):
        notes.append("rows and walk disagree on whether a place oscillates")

    if seq.divergent:
        limit_text = "inf" if seq.direction > 0 else "-inf"
        cls = Classification.NOT_FINITE
        epsilon = offset = Eps.ZERO
        expected = SignExpansion(((PLUS if seq.direction > 0 else MINUS, OMEGA),))
        ok = sym == expected
    elif walk.truncated:
        cls = Classification.NONDYADIC_REAL
        epsilon = offset = Eps.ZERO
        limit_text = str(seq.limit) if seq.limit is not None else seq.name
        # the limit's own expansion, read off the stream rather than the rows
        ok = real_to_se_prefix(seq.stream(), depth) == sym
    else:
        dec = decompose(sym)
        cls = dec.classification
        offset = dec.eps
        epsilon = -offset
        r = walk.limit_dyadic
        limit_text = str(r)
        ok = dec.real_part == r and (seq.limit is None or seq.limit == r.value)
        if seq.side is not None:
            want = {ABOVE: Eps.PLUS, BELOW: Eps.MINUS, EQUAL: Eps.ZERO, MIXED: Eps.ZERO}[seq.side.kind]
            ok = ok and offset == want
    passed = ok and probed is not None and not notes
    return Report(
        name=seq.name,
        slim=str(sym) + (" ..." if walk.truncated else ""),
        slim_truncated=walk.truncated,
        limit=limit_text,
        epsilon=epsilon.value,
        slim_offset=offset.value,
        classification=cls.value,
        depth=depth,
        status=probed.status.value if probed is not None else "probed",
        passed=passed,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# catalog


def _geometric_modulus(shift: int = 0, factor: int = 1) -> Callable[[int], int]:
    """Modulus for rows ``limit +- factor * 2**-(n+shift)``."""

    def mod(m: int) -> int:
        # |r_a - r_b| <= 2 * factor * 2**-(N+shift) <= 2**-m
        extra = (2 * factor - 1).bit_length()
        return max(0, m + extra - shift)

    return mod


def _osc2_term(n: int) -> Fraction:
    delta = Fraction(1, 10 ** (2 + n // 2))
    return 2 - delta if n % 2 == 0 else 2 + delta


def _osc2_modulus(m: int) -> int:
    N = 0
    while 2 * Fraction(1, 10 ** (2 + N // 2)) > Fraction(1, 1 << m):
        N += 1
    return N


def _e_term(n: int) -> Fraction:
    return sum((Fraction(1, math.factorial(k)) for k in range(n + 1)), Fraction(0))


def _e_modulus(m: int) -> int:
    # the tail after index N is below 2/(N+1)!
    N = 0
    while Fraction(2, math.factorial(N + 1)) > Fraction(1, 1 << m):
        N += 1
    return N


E_SERIES = RealSequence(
    "eseries", _e_term, modulus=_e_modulus,
    description="partial sums of e with factorial modulus",
)


def _catalog() -> Dict[str, RealSequence]:
    seqs = [
        RealSequence("halving", lambda n: Fraction(1, 1 << n), _geometric_modulus(),
                     Fraction(0), Side(ABOVE), description="2^-n"),
        RealSequence("neg-halving", lambda n: -Fraction(1, 1 << n), _geometric_modulus(),
                     Fraction(0), Side(BELOW), description="-2^-n"),
        RealSequence("osc2", _osc2_term, _osc2_modulus, Fraction(2), Side(MIXED),
                     description="1.99, 2.01, 1.999, 2.001, ..."),
        RealSequence("dyadic-from-above", lambda n: Fraction(3, 2) + Fraction(1, 1 << n),
                     _geometric_modulus(), Fraction(3, 2), Side(ABOVE), description="3/2 + 2^-n"),
        RealSequence("dyadic-from-below", lambda n: Fraction(3, 2) - Fraction(1, 1 << n),
                     _geometric_modulus(), Fraction(3, 2), Side(BELOW), description="3/2 - 2^-n"),
        E_SERIES,
        RealSequence("diverge", lambda n: Fraction(n), direction=1,
                     divergence=lambda M: M, description="n"),
        RealSequence("neg-diverge", lambda n: Fraction(-n), direction=-1,
                     divergence=lambda M: M, description="-n"),
    ]
    return {s.name: s for s in seqs}


CATALOG: Dict[str, RealSequence] = _catalog()


def explicit_sequence(name: str, values: List[Fraction], tail: Fraction) -> RealSequence:
    """Finitely many given rows, then constant at ``tail``."""
    values = [Fraction(v) for v in values]
    tail = Fraction(tail)
    k = len(values)
    return RealSequence(
        name, lambda n: values[n] if n < k else tail,
        modulus=lambda m: k, limit=tail, side=Side(EQUAL, k),
    )


# ---------------------------------------------------------------------------
# random families


def _random_dyadic(rng: random.Random, span: int = 6, exp: int = 4) -> Fraction:
    return Fraction(rng.randint(-span << exp, span << exp), 1 << rng.randint(0, exp))


def random_sequence(rng: random.Random, index: int = 0) -> RealSequence:
    """A random certified sequence; the shape determines the expected eps."""
    kind = rng.choice(["above", "below", "mixed", "equal", "nondyadic", "nondyadic", "diverge"])
    shift = rng.randint(0, 4)
    name = f"random-{index}-{kind}"
    if kind == "diverge":
        sign = rng.choice([1, -1])
        step = rng.randint(1, 3)
        return RealSequence(name, lambda n: Fraction(sign * step * n), direction=sign,
                            divergence=lambda M: -(-M // step))
    if kind == "nondyadic":
        den = rng.choice([3, 5, 6, 7, 9, 10, 11, 12])
        q = Fraction(rng.randint(-5 * den, 5 * den), den)
        if q.denominator & (q.denominator - 1) == 0:
            q += Fraction(1, 3)
        pattern = rng.choice([1, -1, 0])
        sgn = (lambda n: pattern) if pattern else (lambda n: 1 if n % 2 == 0 else -1)
        return RealSequence(name, lambda n: q + sgn(n) * Fraction(1, 1 << (n + shift)),
                            _geometric_modulus(shift), q)
    d = _random_dyadic(rng)
    if kind == "above":
        return RealSequence(name, lambda n: d + Fraction(1, 1 << (n + shift)),
                            _geometric_modulus(shift), d, Side(ABOVE))
    if kind == "below":
        return RealSequence(name, lambda n: d - Fraction(1, 1 << (n + shift)),
                            _geometric_modulus(shift), d, Side(BELOW))
    if kind == "mixed":
        return RealSequence(name, lambda n: d + (-1) ** n * Fraction(1, 1 << (n + shift)),
                            _geometric_modulus(shift), d, Side(MIXED))
    cutoff = rng.randint(0, 6)
    return RealSequence(name, lambda n: d if n >= cutoff else d + Fraction(1, 1 << (n + shift)),
                        lambda m: cutoff, d, Side(EQUAL, cutoff))


def random_finite_surreal_sequence(rng: random.Random, index: int = 0) -> RealSequence:
    """Rows ``r_n + e_n`` with ``e_n`` in ``{0, +-1/w}`` and convergent real parts."""
    base = random_sequence(rng, index)
    while base.divergent:
        base = random_sequence(rng, index)
    choices = [Eps.ZERO, Eps.PLUS, Eps.MINUS]
    seed = rng.randint(0, 1 << 30)

    def eps(n: int) -> Eps:
        q = Fraction(base.term(n))
        if q.denominator & (q.denominator - 1):
            return Eps.ZERO
        return choices[random.Random(seed * 1000003 + n).randrange(3)]

    side = base.side
    if base.limit is not None and side is not None:
        side = _surreal_side(base, eps)
    return RealSequence(
        base.name.replace("random", "surreal"), base.term, base.modulus, base.limit,
        side, eps=eps,
    )


def _surreal_side(base: RealSequence, eps: Callable[[int], Eps]) -> Side:
    """Side of the rows ``r_n + e_n`` relative to the limit, read off the shape."""
    r = base.limit
    probe = RealSequence(base.name, base.term, base.modulus, r, base.side, eps=eps)
    start = base.side.from_index
    window = [probe.row_side(n, r) for n in range(start, start + 4 * probe_budget())]
    kinds = set(window)
    if len(kinds) == 1:
        return Side(window[0], start)
    # rows that sit exactly on the limit pick their side from e_n, which is random
    return Side(MIXED, start)
