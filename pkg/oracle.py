"""
Brute-force n! oracles. Every permutation is evaluated exactly, in
lexicographic order, with no pruning.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Any, Callable, List, Optional, Sequence

import utils
from errors import CapExceededError
from linfun import LinearFunction, Permutation, compose_seq
from matrix2 import Matrix2
from maxplus import MaxPlusMatrix2, mp_objective

logger = logging.getLogger(__name__)

Matrix = List[List[Fraction]]


@dataclass
class OracleReport:
    best_value: Any
    all_optimal_permutations: List[Permutation] = field(default_factory=list)
    evaluated_count: int = 0
    best_composite: Optional[Any] = None


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceededError(f"Brute force refuses n={n} (cap {cap}); {n}! permutations")


def _exhaust(n: int, cap: int, objective: Callable[[Permutation], Any], maximize: bool = False) -> OracleReport:
    _check_cap(n, cap)
    report = OracleReport(best_value=None)
    for sigma in permutations(range(n)):
        value = objective(sigma)
        report.evaluated_count += 1
        if report.best_value is None:
            better, tie = True, False
        else:
            better = value > report.best_value if maximize else value < report.best_value
            tie = value == report.best_value
        if better:
            report.best_value = value
            report.all_optimal_permutations = [sigma]
        elif tie:
            report.all_optimal_permutations.append(sigma)
    logger.debug(
        "oracle: n=%d, evaluated=%d, optima=%d", n, report.evaluated_count, len(report.all_optimal_permutations)
    )
    return report


def brute_min_composition(
    fs: Sequence[LinearFunction], c=0, sense: str = "min", cap: Optional[int] = None
) -> OracleReport:
    """Optima of f^σ(c). All composites share a slope, so equal values mean equal composites."""
    c = Fraction(c)
    report = _exhaust(
        len(fs),
        cap if cap is not None else utils.ORACLE_CAP_LINEAR,
        lambda sigma: compose_seq(fs, sigma).evaluate(c),
        maximize=sense == "max",
    )
    report.best_composite = compose_seq(fs, report.all_optimal_permutations[0])
    return report


def _as_rows(m: Any) -> Matrix:
    if isinstance(m, Matrix2):
        return [[m.e11, m.e12], [m.e21, m.e22]]
    return [[Fraction(v) for v in row] for row in m]


def _mat_vec(m: Matrix, v: List[Fraction]) -> List[Fraction]:
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in m]


def matrix_objective(ms: Sequence[Any], w: Sequence, y: Sequence, sigma: Sequence[int]) -> Fraction:
    """w·M_σ(n−1)⋯M_σ(0)·y for square matrices of any size."""
    rows = [_as_rows(m) for m in ms]
    v = [Fraction(x) for x in y]
    for i in sigma:
        v = _mat_vec(rows[i], v)
    return sum((Fraction(a) * b for a, b in zip(w, v)), Fraction(0))


def brute_min_matrix(
    ms: Sequence[Any], w: Sequence, y: Sequence, sense: str = "min", cap: Optional[int] = None
) -> OracleReport:
    rows = [_as_rows(m) for m in ms]
    return _exhaust(
        len(ms),
        cap if cap is not None else utils.ORACLE_CAP_MATRIX,
        lambda sigma: matrix_objective(rows, w, y, sigma),
        maximize=sense == "max",
    )


def brute_min_maxplus(ns: Sequence[MaxPlusMatrix2], cap: Optional[int] = None) -> OracleReport:
    return _exhaust(
        len(ns),
        cap if cap is not None else utils.ORACLE_CAP_MATRIX,
        lambda sigma: mp_objective(ns, sigma),
    )


def brute_target(fs: Sequence[LinearFunction], c, t, cap: Optional[int] = None) -> OracleReport:
    """Optima of |f^σ(c) − t|."""
    c, t = Fraction(c), Fraction(t)
    report = _exhaust(
        len(fs),
        cap if cap is not None else utils.ORACLE_CAP_LINEAR,
        lambda sigma: abs(compose_seq(fs, sigma).evaluate(c) - t),
    )
    report.best_composite = compose_seq(fs, report.all_optimal_permutations[0])
    return report
