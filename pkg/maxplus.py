"""
Ordering of 2×2 upper-triangular matrices in the max-plus semiring.

N = (a b; 𝟘 d) with ⊕ = max and ⊗ = +. The objective is the (1,2) entry of
N_σ(n−1) ⊗ ⋯ ⊗ N_σ(0), minimized by a lexicographic sort on κ*. Two-machine
flow shop makespan is the special case a = p2, d = p1, b = p1 + p2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from errors import InternalSolverError, ParseError, UnsupportedInstanceError
from linfun import Permutation, check_permutation
from matrix2 import Matrix2
from utils import format_rational, parse_rational

logger = logging.getLogger(__name__)

NEG_INF_LITERALS = {"-inf", "-infinity", "−∞", "-∞"}


@total_ordering
@dataclass(frozen=True)
class MaxPlusScalar:
    """An element of ℚ ∪ {−∞}; ``value`` None is 𝟘 = −∞."""

    value: Optional[Fraction] = None

    def __post_init__(self):
        if self.value is not None:
            object.__setattr__(self, "value", Fraction(self.value))

    @property
    def is_zero(self) -> bool:
        return self.value is None

    def oplus(self, other: "MaxPlusScalar") -> "MaxPlusScalar":
        return max(self, other)

    def otimes(self, other: "MaxPlusScalar") -> "MaxPlusScalar":
        if self.is_zero or other.is_zero:
            return ZERO
        return MaxPlusScalar(self.value + other.value)

    def __lt__(self, other: "MaxPlusScalar") -> bool:
        if self.is_zero:
            return not other.is_zero
        return not other.is_zero and self.value < other.value

    def __str__(self) -> str:
        return "-inf" if self.is_zero else format_rational(self.value)

    @classmethod
    def parse(cls, raw: Any, approx: bool = False) -> "MaxPlusScalar":
        if isinstance(raw, str) and raw.strip().lower() in NEG_INF_LITERALS:
            return ZERO
        return cls(parse_rational(raw, approx))


ZERO = MaxPlusScalar(None)
ONE = MaxPlusScalar(Fraction(0))


def _scalar(value) -> MaxPlusScalar:
    return value if isinstance(value, MaxPlusScalar) else MaxPlusScalar(value)


@dataclass(frozen=True)
class MaxPlusMatrix2:
    a: MaxPlusScalar
    b: MaxPlusScalar
    d: MaxPlusScalar

    def __post_init__(self):
        for name in ("a", "b", "d"):
            object.__setattr__(self, name, _scalar(getattr(self, name)))

    @property
    def is_finite(self) -> bool:
        return not (self.a.is_zero or self.b.is_zero or self.d.is_zero)

    def to_dict(self) -> Dict[str, str]:
        return {"a": str(self.a), "b": str(self.b), "d": str(self.d)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any], approx: bool = False) -> "MaxPlusMatrix2":
        try:
            return cls(*(MaxPlusScalar.parse(data[key], approx) for key in ("a", "b", "d")))
        except (KeyError, TypeError):
            raise ParseError(f"Max-plus matrix needs 'a', 'b' and 'd': {data!r}")


MP_IDENTITY = MaxPlusMatrix2(ONE, ZERO, ONE)


def mp_multiply(n2: MaxPlusMatrix2, n1: MaxPlusMatrix2) -> MaxPlusMatrix2:
    """N2 ⊗ N1."""
    return MaxPlusMatrix2(
        n2.a.otimes(n1.a),
        n2.a.otimes(n1.b).oplus(n2.b.otimes(n1.d)),
        n2.d.otimes(n1.d),
    )


def mp_product(ns: Sequence[MaxPlusMatrix2], sigma: Optional[Sequence[int]] = None) -> MaxPlusMatrix2:
    sigma = range(len(ns)) if sigma is None else check_permutation(sigma, len(ns))
    acc = MP_IDENTITY
    for i in sigma:
        acc = mp_multiply(ns[i], acc)
    return acc


def mp_objective(ns: Sequence[MaxPlusMatrix2], sigma: Sequence[int]) -> MaxPlusScalar:
    return mp_product(ns, sigma).b


def mp_objective_closed_form(ns: Sequence[MaxPlusMatrix2], sigma: Sequence[int]) -> MaxPlusScalar:
    """max over i of b_σ(i) + Σ_{j<i} d_σ(j) + Σ_{j>i} a_σ(j)."""
    sigma = check_permutation(sigma, len(ns))
    best = ZERO
    for i, idx in enumerate(sigma):
        term = ns[idx].b
        for j in sigma[:i]:
            term = term.otimes(ns[j].d)
        for j in sigma[i + 1:]:
            term = term.otimes(ns[j].a)
        best = best.oplus(term)
    return best


# ============================================================
# 🔑 Ordering Keys
# ============================================================
KappaKey = Tuple[Any, ...]


def _finite(n: MaxPlusMatrix2) -> Tuple[Fraction, Fraction, Fraction]:
    if not n.is_finite:
        raise UnsupportedInstanceError(
            f"Max-plus matrix {n.to_dict()} has a -inf entry", code="infinite-entry-unsupported"
        )
    return n.a.value, n.b.value, n.d.value


def kappa_star(n: MaxPlusMatrix2) -> KappaKey:
    a, b, d = _finite(n)
    if a > d:
        return (-1, b - a)
    if a == d:
        return (0, Fraction(0))
    return (1, d - b)


def kappa_full(n: MaxPlusMatrix2) -> KappaKey:
    a, b, d = _finite(n)
    if a > d:
        return (-1, b - a, d - b)
    if a == d:
        return (0, Fraction(0), Fraction(0))
    return (1, d - b, a - b)


def kappa_blb(n: MaxPlusMatrix2) -> KappaKey:
    a, b, d = _finite(n)
    if a >= d:
        return (-1, b - a)
    return (1, d - b)


KAPPA_KEYS: Dict[str, Callable[[MaxPlusMatrix2], KappaKey]] = {
    "kappa_star": kappa_star,
    "kappa_full": kappa_full,
    "kappa_blb": kappa_blb,
}


@dataclass(frozen=True)
class MaxPlusResult:
    sigma: Permutation
    value: MaxPlusScalar


def sort_by_key(ns: Sequence[MaxPlusMatrix2], key: Callable[[MaxPlusMatrix2], KappaKey] = kappa_star) -> Permutation:
    """Stable ascending sort; position 0 is applied first."""
    keys = [key(n) for n in ns]
    return tuple(sorted(range(len(ns)), key=lambda i: keys[i]))


def solve_maxplus_min(ns: Sequence[MaxPlusMatrix2], key: str = "kappa_star") -> MaxPlusResult:
    if key not in KAPPA_KEYS:
        raise ParseError(f"Unknown ordering key '{key}'")
    sigma = sort_by_key(ns, KAPPA_KEYS[key])
    value = mp_objective(ns, sigma)
    logger.debug("max-plus solve: n=%d, key=%s, value=%s", len(ns), key, value)
    return MaxPlusResult(sigma, value)


# ============================================================
# 🏭 Two-Machine Flow Shop
# ============================================================
Job = Tuple[Fraction, Fraction]


def _check_jobs(jobs: Sequence[Job]) -> List[Job]:
    out = []
    for i, (p1, p2) in enumerate(jobs):
        p1, p2 = Fraction(p1), Fraction(p2)
        if p1 < 0 or p2 < 0:
            raise UnsupportedInstanceError(
                f"Job {i + 1} has a negative processing time", code="negative-processing-time"
            )
        out.append((p1, p2))
    return out


def flowshop_to_maxplus(jobs: Sequence[Job]) -> List[MaxPlusMatrix2]:
    return [MaxPlusMatrix2(p2, p1 + p2, p1) for p1, p2 in _check_jobs(jobs)]


def flowshop_makespan(jobs: Sequence[Job], sigma: Sequence[int]) -> Fraction:
    """Completion time of the last job on machine 2, jobs run in σ order."""
    jobs = _check_jobs(jobs)
    sigma = check_permutation(sigma, len(jobs))
    first = second = Fraction(0)
    for i in sigma:
        p1, p2 = jobs[i]
        first += p1
        second = max(second, first) + p2
    return second


def johnson_rule(jobs: Sequence[Job]) -> Permutation:
    jobs = _check_jobs(jobs)
    head = sorted((i for i, (p1, p2) in enumerate(jobs) if p1 < p2), key=lambda i: jobs[i][0])
    tail = sorted((i for i, (p1, p2) in enumerate(jobs) if p1 >= p2), key=lambda i: -jobs[i][1])
    return tuple(head + tail)


# ============================================================
# 🔄 Commutation
# ============================================================
def mp_family_commutes(ns: Sequence[MaxPlusMatrix2]) -> bool:
    """
    ⊗ is commutative on the family iff either
    every a ≥ d, all b − a agree on c over a > d, and c ≥ b − a wherever a = d; or
    every a ≤ d, all d − b agree on c over a < d, and c ≤ d − b wherever a = d.
    """
    entries = [_finite(n) for n in ns]

    def holds(sign: int) -> bool:
        if any((a - d) * sign < 0 for a, b, d in entries):
            return False
        strict = {(b - a) if sign > 0 else (d - b) for a, b, d in entries if a != d}
        if len(strict) > 1:
            return False
        if not strict:
            return True
        c = strict.pop()
        if sign > 0:
            return all(c >= b - a for a, b, d in entries if a == d)
        return all(c <= d - b for a, b, d in entries if a == d)

    return holds(1) or holds(-1)


def mp_commutes(n1: MaxPlusMatrix2, n2: MaxPlusMatrix2) -> bool:
    direct = mp_multiply(n1, n2) == mp_multiply(n2, n1)
    by_rule = mp_family_commutes([n1, n2])
    if direct != by_rule:
        logger.error(f"❌ Commutation rule says {by_rule} but products say {direct} for {n1!r}, {n2!r}")
        raise InternalSolverError("Commutation rule disagrees with the direct products")
    return direct


# ============================================================
# 🔗 Linear-Algebra Embedding
# ============================================================
def gamma_embedding(ns: Sequence[MaxPlusMatrix2]) -> Tuple[List[Matrix2], Tuple[int, int], Tuple[int, int]]:
    """
    Matrices (γ^a γ^b; 0 γ^d) with γ = n(n+1)/2 + 1 whose ordinary product
    ranks orders like the max-plus objective. Needs integer entries.
    """
    gamma = len(ns) * (len(ns) + 1) // 2 + 1
    matrices = []
    for n in ns:
        a, b, d = _finite(n)
        if any(v.denominator != 1 or v < 0 for v in (a, b, d)):
            raise UnsupportedInstanceError(
                "Embedding needs nonnegative integer entries", code="non-integer-exponent"
            )
        matrices.append(Matrix2(gamma ** int(a), gamma ** int(b), 0, gamma ** int(d)))
    return matrices, (1, 0), (0, 1)
