"""Random descriptor builders shared by the limit and acceptance tests."""

import random

from hypothesis import strategies as st
from typing import List, Tuple

from surlim.limits import Parametric, Template
from surlim.ordinal import Ordinal
from surlim.parsing import parse_param
from surlim.sign import MINUS, PLUS, SignExpansion, concat, normalize, se_cmp, Order


def random_length(rng: random.Random, finite_only: bool = False) -> Ordinal:
    if finite_only or rng.random() < 0.5:
        return Ordinal.nat(rng.randint(1, 4))
    terms = sorted({rng.randint(0, 2) for _ in range(rng.randint(1, 2))}, reverse=True)
    return Ordinal(tuple((Ordinal.nat(e), rng.randint(1, 3)) for e in terms))


def random_se(rng: random.Random, max_runs: int = 3, first=None, finite_only: bool = False) -> SignExpansion:
    runs = []
    sign = first if first is not None else rng.choice([PLUS, MINUS])
    for _ in range(rng.randint(0 if first is None else 1, max_runs)):
        runs.append((sign, random_length(rng, finite_only)))
        sign = -sign
    return normalize(runs)


GROWTH = [
    "n", "n+1", "2*n", "w + n", "w*n", "w*(n+1) + 3", "w^n", "w^(n+1)",
    "w^2*n + w", "w^2 + n", "w*2 + 2*n", "3", "w",
]


def random_growth(rng: random.Random) -> str:
    return rng.choice(GROWTH)


def nondecreasing_family(rng: random.Random) -> Tuple[SignExpansion, str, SignExpansion]:
    """``(C, P, D)`` describing rows ``C [+P(n)] D`` with D empty or starting with minus."""
    c = random_se(rng)
    d = random_se(rng, first=MINUS) if rng.random() < 0.7 else SignExpansion()
    return c, random_growth(rng), d


def build(c: SignExpansion, growth: str, d: SignExpansion) -> Parametric:
    t = Template.const(c) + Template(((PLUS, parse_param(growth)),)) + Template.const(d)
    return Parametric((t,))


def check_nondecreasing(seq, samples: int = 24) -> bool:
    rows = [seq.row(n) for n in range(samples)]
    return all(se_cmp(a, b) != Order.GREATER for a, b in zip(rows, rows[1:]))


def chained(a, b, samples: int = 24) -> bool:
    """Each sampled row of one is dominated by some later sampled row of the other."""
    ra = [a.row(n) for n in range(2 * samples)]
    rb = [b.row(n) for n in range(2 * samples)]
    return all(any(x <= y for y in rb) for x in ra[:samples]) and all(
        any(y <= x for x in ra) for y in rb[:samples]
    )


def periodic_family(rng: random.Random, period: int) -> Parametric:
    """Arbitrary periodic family with each branch monotone in its own parameter."""
    branches: List[Template] = []
    for _ in range(period):
        runs = []
        sign = rng.choice([PLUS, MINUS])
        for _ in range(rng.randint(1, 3)):
            if rng.random() < 0.5:
                runs.append((sign, parse_param(random_growth(rng))))
            else:
                runs.append((sign, parse_param(str(random_length(rng)))))
            sign = -sign
        branches.append(Template(tuple(runs)))
    return Parametric(tuple(branches))


@st.composite
def periodic(draw):
    rng = random.Random(draw(st.integers(0, 10 ** 9)))
    return periodic_family(rng, draw(st.integers(1, 3)))
