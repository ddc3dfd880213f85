"""Hypothesis strategies and small builders shared by the test modules."""

import json
from fractions import Fraction
from pathlib import Path

from hypothesis import strategies as st

from linfun import LinearFunction
from matrix2 import Matrix2
from maxplus import MaxPlusMatrix2

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

POSITIVE = [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)]
NEGATIVE = [-s for s in POSITIVE]


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def load_fixture(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text())


def lf(a, b) -> LinearFunction:
    return LinearFunction(Fraction(a), Fraction(b))


def rationals(lo: int = -4, hi: int = 4):
    return st.builds(Fraction, st.integers(lo, hi), st.sampled_from([1, 2, 3]))


def functions(slopes, min_size: int = 0, max_size: int = 6):
    return st.lists(
        st.builds(LinearFunction, st.sampled_from(slopes), rationals()),
        min_size=min_size,
        max_size=max_size,
    )


def monotone_functions(min_size: int = 0, max_size: int = 6):
    return functions(POSITIVE, min_size, max_size)


def nondecreasing_functions(min_size: int = 1, max_size: int = 6):
    return functions(POSITIVE + [Fraction(0)], min_size, max_size)


@st.composite
def general_functions(draw, max_size: int = 6, max_k: int = 3, constants: bool = True):
    """At least one decreasing function and at most ``max_k`` of them."""
    n = draw(st.integers(1, max_size))
    k = draw(st.integers(1, min(max_k, n)))
    dec = draw(functions(NEGATIVE, k, k))
    rest = draw(functions(POSITIVE + [Fraction(0)] if constants else POSITIVE, n - k, n - k))
    return draw(st.permutations(dec + rest))


@st.composite
def triangular_matrices(draw, min_size: int = 1, max_size: int = 5, mixed_signs: bool = True, zero_diagonal: bool = False):
    """Upper triangular matrices; ``zero_diagonal`` lets the lower-right entry be 0."""
    n = draw(st.integers(min_size, max_size))
    diag = st.sampled_from([-2, -1, 1, 2, 3] if mixed_signs else [1, 2, 3])
    lower_right = st.sampled_from([-1, 0, 0, 1, 2]) if zero_diagonal else diag
    out = []
    for _ in range(n):
        out.append(Matrix2(draw(diag), draw(st.integers(-3, 3)), 0, draw(lower_right)))
    return out


def maxplus_matrices(min_size: int = 1, max_size: int = 6, hi: int = 6):
    entry = st.integers(0, hi)
    return st.lists(st.builds(MaxPlusMatrix2, entry, entry, entry), min_size=min_size, max_size=max_size)


def jobs(min_size: int = 1, max_size: int = 6):
    time = st.integers(0, 9).map(Fraction)
    return st.lists(st.tuples(time, time), min_size=min_size, max_size=max_size)
