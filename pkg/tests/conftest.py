import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from surlim.ordinal import Ordinal  # noqa: E402
from surlim.sign import MINUS, PLUS, normalize  # noqa: E402

settings.register_profile(
    "default", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE = {}


def record(criterion: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")

    def key(k):
        head = k.split()[0]
        return (int(head), k) if head.isdigit() else (99, k)

    for name in sorted(ACCEPTANCE, key=key):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"criterion {name}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())


@st.composite
def ordinals(draw, depth: int = 2, max_terms: int = 3, max_coef: int = 5):
    if depth == 0:
        return Ordinal.nat(draw(st.integers(0, max_coef)))
    exps = draw(st.lists(ordinals(depth - 1, max_terms, max_coef), max_size=max_terms, unique=True))
    exps.sort(reverse=True)
    return Ordinal(tuple((e, draw(st.integers(1, max_coef))) for e in exps))


@st.composite
def positive_ordinals(draw, depth: int = 2):
    a = draw(ordinals(depth))
    return a if a else Ordinal.nat(1)


@st.composite
def sign_expansions(draw, depth: int = 2, max_runs: int = 4):
    n = draw(st.integers(0, max_runs))
    first = draw(st.sampled_from([PLUS, MINUS]))
    runs = []
    for i in range(n):
        runs.append((first if i % 2 == 0 else -first, draw(positive_ordinals(depth))))
    return normalize(runs)


@st.composite
def finite_sign_expansions(draw, max_len: int = 10):
    signs = draw(st.lists(st.sampled_from([PLUS, MINUS]), max_size=max_len))
    return normalize((s, 1) for s in signs)
