import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from futaki.multipoly import GaussianRational, Polynomial

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"

Z4 = ["z0", "z1", "z2", "z3"]


def rand_fraction(rng, bound=20, den=12):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def rand_gaussian(rng, bound=20, den=12, complex_prob=0.5):
    im = rand_fraction(rng, bound, den) if rng.random() < complex_prob else 0
    return GaussianRational(rand_fraction(rng, bound, den), im)


def rand_homogeneous(rng, nvars, degree, terms=5):
    out = {}
    for _ in range(terms):
        exps = [0] * nvars
        for _ in range(degree):
            exps[rng.randrange(nvars)] += 1
        out[tuple(exps)] = rand_gaussian(rng)
    return Polynomial(nvars, out)


def rand_poly(rng, nvars, max_degree=4, terms=6):
    out = {}
    for _ in range(terms):
        exps = tuple(rng.randint(0, max_degree) for _ in range(nvars))
        out[exps] = rand_gaussian(rng)
    return Polynomial(nvars, out)


@pytest.fixture
def rng():
    return random.Random(20240611)


fractions_st = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10 ** 6)
gaussians_st = st.builds(GaussianRational, fractions_st, fractions_st)


@st.composite
def polynomials_st(draw, nvars=None, homogeneous_degree=None):
    n = nvars if nvars is not None else draw(st.integers(1, 5))
    if homogeneous_degree is None:
        exps_st = st.tuples(*[st.integers(0, 4)] * n)
    else:
        d = homogeneous_degree
        exps_st = st.lists(st.integers(0, n - 1), min_size=d, max_size=d).map(
            lambda idx: tuple(idx.count(i) for i in range(n)))
    terms = draw(st.dictionaries(exps_st, gaussians_st, max_size=6))
    return Polynomial(n, terms)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda text: int(text.split()[1])):
            terminalreporter.write_line(line)
