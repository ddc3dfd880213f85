"""
Multiplication ordering for 2×2 rational matrices.

A simultaneously triangularizable family is conjugated to upper triangular
form, signs are normalized so every d ≥ 0, and the normalized matrices are
fed to the linear-function solvers through the same element protocol
LinearFunction implements. A matrix (a b; 0 d) behaves like the function
(a/d)x + b/d; d = 0 is read as d = ε.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, prod
from typing import Any, List, Optional, Sequence, Tuple

from ccw_solver import CaseTag
from errors import ParseError, UnsupportedInstanceError
from fpt_solver import solve_general_max, solve_general_min
from linfun import LinearFunction, Permutation, check_permutation, compose_seq
from numeric_core import BOT, Direction
from utils import format_rational, parse_rational

logger = logging.getLogger(__name__)

Vector2 = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Matrix2:
    e11: Fraction
    e12: Fraction
    e21: Fraction
    e22: Fraction

    def __post_init__(self):
        for name in ("e11", "e12", "e21", "e22"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def det(self) -> Fraction:
        return self.e11 * self.e22 - self.e12 * self.e21

    @property
    def trace(self) -> Fraction:
        return self.e11 + self.e22

    @property
    def is_upper_triangular(self) -> bool:
        return self.e21 == 0

    @property
    def is_scalar(self) -> bool:
        return self.e12 == 0 and self.e21 == 0 and self.e11 == self.e22

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.e11 * other.e11 + self.e12 * other.e21,
            self.e11 * other.e12 + self.e12 * other.e22,
            self.e21 * other.e11 + self.e22 * other.e21,
            self.e21 * other.e12 + self.e22 * other.e22,
        )

    def __neg__(self) -> "Matrix2":
        return Matrix2(-self.e11, -self.e12, -self.e21, -self.e22)

    def apply(self, v: Sequence[Fraction]) -> Vector2:
        return (self.e11 * v[0] + self.e12 * v[1], self.e21 * v[0] + self.e22 * v[1])

    def transpose(self) -> "Matrix2":
        return Matrix2(self.e11, self.e21, self.e12, self.e22)

    def inverse(self) -> "Matrix2":
        det = self.det
        if det == 0:
            raise UnsupportedInstanceError("Matrix is singular", code="singular-matrix")
        return Matrix2(self.e22 / det, -self.e12 / det, -self.e21 / det, self.e11 / det)

    # ---- element protocol (upper triangular, e22 ≥ 0) -------------------
    @property
    def slope(self) -> Fraction:
        return self.e11

    @property
    def order_key(self) -> Fraction:
        return self.e12

    @property
    def is_identity(self) -> bool:
        return self.is_scalar

    def after(self, inner: "Matrix2") -> "Matrix2":
        return self @ inner

    def direction(self, perturb_constants: bool = False) -> Direction:
        if self.is_identity:
            return BOT
        a, b, d = self.e11, self.e12, self.e22
        if d == 0:
            return Direction.of(b, -a, 0, 1)
        if perturb_constants and a == 0:
            return Direction.of(b, d, 0, -1)
        return Direction.of(b, d - a)

    def tilde(self) -> "Matrix2":
        return tilde_matrix(self)

    def identity(self) -> "Matrix2":
        return IDENTITY2

    def evaluate(self, c) -> Fraction:
        """(1 0)·M·(c 1)ᵀ; at c = 0 this is the (1,2) entry."""
        return self.e11 * Fraction(c) + self.e12

    # ---- I/O ------------------------------------------------------------
    def to_list(self) -> List[List[str]]:
        return [
            [format_rational(self.e11), format_rational(self.e12)],
            [format_rational(self.e21), format_rational(self.e22)],
        ]

    @classmethod
    def from_list(cls, rows: Any, approx: bool = False) -> "Matrix2":
        if len(rows) != 2 or any(len(row) != 2 for row in rows):
            raise ParseError(f"Expected a 2x2 matrix, got {rows!r}")
        (a, b), (c, d) = rows
        return cls(*(parse_rational(v, approx) for v in (a, b, c, d)))


IDENTITY2 = Matrix2(1, 0, 0, 1)


def tilde_matrix(m: Matrix2) -> Matrix2:
    """(a b; 0 d) ↦ (a −b; 0 d); reverses the order of (1,2) entries of products."""
    return Matrix2(m.e11, -m.e12, m.e21, m.e22)


# ============================================================
# 🔺 Simultaneous Triangularization
# ============================================================
def _rational_sqrt(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        return None
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def _eigenvector(m: Matrix2, eigenvalue: Fraction) -> Vector2:
    p, q = m.e11 - eigenvalue, m.e12
    if p == 0 and q == 0:
        p, q = m.e21, m.e22 - eigenvalue
    return (q, -p)


def try_simultaneous_triangularize(matrices: Sequence[Matrix2]) -> Optional[Matrix2]:
    """
    Regular P with every P⁻¹·M·P upper triangular, searched over rational
    common eigenvectors. Returns None when no common eigenvector exists.
    """
    if all(m.is_scalar for m in matrices) or all(m.is_upper_triangular for m in matrices):
        return IDENTITY2

    pivot = next(m for m in matrices if not m.is_scalar)
    disc = pivot.trace ** 2 - 4 * pivot.det
    root = _rational_sqrt(disc)
    if root is None:
        raise UnsupportedInstanceError(
            f"Eigenvalues of {pivot.to_list()} are not rational (discriminant {disc})",
            code="irrational-triangularization",
        )

    for eigenvalue in dict.fromkeys(((pivot.trace + root) / 2, (pivot.trace - root) / 2)):
        v = _eigenvector(pivot, eigenvalue)
        if all(_is_eigenvector(m, v) for m in matrices):
            u = (Fraction(1), Fraction(0)) if v[1] != 0 else (Fraction(0), Fraction(1))
            transform = Matrix2(v[0], u[0], v[1], u[1])
            logger.debug("common eigenvector %s found for %d matrices", v, len(matrices))
            return transform
    return None


def _is_eigenvector(m: Matrix2, v: Vector2) -> bool:
    mv = m.apply(v)
    return mv[0] * v[1] - mv[1] * v[0] == 0


def conjugate(matrices: Sequence[Matrix2], transform: Matrix2) -> List[Matrix2]:
    inv = transform.inverse()
    return [inv @ m @ transform for m in matrices]


# ============================================================
# ➡️ Reduction to Linear Functions
# ============================================================
@dataclass(frozen=True)
class LinearReduction:
    """
    w·M^σ·y = offset + coefficient·(N^σ)₁₂ where N_i = ±M_i has d_i ≥ 0.
    ``elements`` are the N_i; a d_i = 0 element keeps its ε direction.
    ``functions`` is the (a/d)x + b/d form, available only when every d_i > 0.
    """
    elements: List[Matrix2]
    functions: Optional[List[LinearFunction]]
    coefficient: Fraction
    scale: Fraction
    offset: Fraction
    parity: int

    @property
    def flip(self) -> bool:
        """Minimizing the objective means maximizing the corner entry."""
        return self.coefficient < 0

    @property
    def degenerate(self) -> bool:
        return self.coefficient == 0

    def objective(self, value_at_zero: Fraction) -> Fraction:
        return self.offset + self.scale * value_at_zero

    def objective_of(self, sigma: Sequence[int]) -> Fraction:
        if not self.elements:
            return self.offset
        corner = compose_seq(self.elements, sigma).evaluate(0)
        return self.offset + self.coefficient * corner


def _require_triangular(matrices: Sequence[Matrix2]) -> None:
    for i, m in enumerate(matrices):
        if not m.is_upper_triangular:
            raise UnsupportedInstanceError(f"Matrix {i + 1} is not upper triangular", code="not-triangular")


def reduce_to_linear(matrices: Sequence[Matrix2], w: Sequence, y: Sequence) -> LinearReduction:
    """
    Sign-normalize so every d_i ≥ 0 (parity p counts the flips). The corner
    entry of the product then carries all σ dependence, with coefficient
    (−1)^p·w₁·y₂; f^σ(0) scales it by ∏d_i when no d_i is zero.
    """
    _require_triangular(matrices)
    w1, w2 = (Fraction(v) for v in w)
    y1, y2 = (Fraction(v) for v in y)
    parity = sum(1 for m in matrices if m.e22 < 0) % 2
    normalized = [-m if m.e22 < 0 else m for m in matrices]
    coefficient = (-1) ** parity * w1 * y2

    prod_a = prod((m.e11 for m in matrices), start=Fraction(1))
    prod_d = prod((m.e22 for m in normalized), start=Fraction(1))
    offset = w1 * y1 * prod_a + w2 * y2 * (-1) ** parity * prod_d

    if prod_d == 0:
        functions = None
        logger.debug("reduction keeps %d zero-diagonal matrices symbolic", sum(1 for m in normalized if m.e22 == 0))
    else:
        functions = [LinearFunction(m.e11 / m.e22, m.e12 / m.e22) for m in normalized]
    return LinearReduction(normalized, functions, coefficient, coefficient * prod_d, offset, parity)


# ============================================================
# 🚀 Solver
# ============================================================
@dataclass(frozen=True)
class MatrixOrderingResult:
    sigma: Permutation
    value: Fraction
    case_tag: Optional[CaseTag]
    k: int
    transform: Matrix2


def evaluate_matrix_order(matrices: Sequence[Matrix2], w: Sequence, y: Sequence, sigma: Sequence[int]) -> Fraction:
    """w·M_σ(n−1)⋯M_σ(0)·y; σ(0) is applied to y first."""
    sigma = check_permutation(sigma, len(matrices))
    v = (Fraction(y[0]), Fraction(y[1]))
    for i in sigma:
        v = matrices[i].apply(v)
    return Fraction(w[0]) * v[0] + Fraction(w[1]) * v[1]


def solve_matrix2(matrices: Sequence[Matrix2], w: Sequence, y: Sequence, sense: str = "min") -> MatrixOrderingResult:
    n = len(matrices)
    transform = try_simultaneous_triangularize(matrices)
    if transform is None:
        raise UnsupportedInstanceError(
            "Matrices have no common eigenvector and cannot be triangularized together",
            code="not-triangularizable",
        )
    triangular = conjugate(matrices, transform)
    w_t = transform.transpose().apply(w)
    y_t = transform.inverse().apply(y)
    if sense == "max":
        w_t = (-w_t[0], -w_t[1])

    reduction = reduce_to_linear(triangular, w_t, y_t)
    if reduction.degenerate or n == 0:
        sigma, case_tag, k = tuple(range(n)), None, 0
    else:
        solve = solve_general_max if reduction.flip else solve_general_min
        res = solve(reduction.elements)
        sigma, case_tag, k = res.sigma, res.case_tag, res.k

    logger.debug("matrix solve: n=%d, parity=%d, flip=%s", n, reduction.parity, reduction.flip)
    value = evaluate_matrix_order(matrices, w, y, sigma)
    return MatrixOrderingResult(sigma, value, case_tag, k, transform)
