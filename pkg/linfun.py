"""
Linear-function algebra for composition ordering.

f(x) = a·x + b is identified with its vector (b, 1 − a). Composition obeys
vec(h∘g) = vec(h) + α(h)·vec(g), and the order of two composites with equal
slope is decided by their intercepts.

Permutations are 0-based tuples where position i holds σ(i); f^σ applies
σ(0) first: f^σ = f_σ(n−1) ∘ ⋯ ∘ f_σ(0).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Protocol, Sequence, Tuple, TypeVar

from errors import LengthMismatchError, ParseError
from numeric_core import BOT, Direction, cross_sign
from utils import format_rational, parse_rational

Permutation = Tuple[int, ...]


class FunctionKind(str, Enum):
    IDENTITY = "identity"
    CONSTANT = "constant"
    INCREASING = "increasing"
    DECREASING = "decreasing"


class Composable(Protocol):
    """What the ordering solvers need from an element (functions or triangular matrices)."""

    @property
    def slope(self) -> Fraction: ...

    @property
    def order_key(self) -> Fraction: ...

    @property
    def is_identity(self) -> bool: ...

    def after(self, inner): ...

    def direction(self, perturb_constants: bool = False) -> Direction: ...

    def tilde(self): ...

    def identity(self): ...

    def evaluate(self, c: Fraction) -> Fraction: ...


E = TypeVar("E")


@dataclass(frozen=True)
class LinearFunction:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    # ---- classification -------------------------------------------------
    @property
    def kind(self) -> FunctionKind:
        return classify(self)

    @property
    def is_identity(self) -> bool:
        return self.a == 1 and self.b == 0

    @property
    def is_constant(self) -> bool:
        return self.a == 0

    @property
    def is_monotone(self) -> bool:
        """a > 0, the identity included."""
        return self.a > 0

    @property
    def is_decreasing(self) -> bool:
        return self.a < 0

    # ---- element protocol -----------------------------------------------
    @property
    def slope(self) -> Fraction:
        return self.a

    @property
    def order_key(self) -> Fraction:
        return self.b

    def after(self, inner: "LinearFunction") -> "LinearFunction":
        return compose(self, inner)

    def direction(self, perturb_constants: bool = False) -> Direction:
        return direction(self, perturb_constants)

    def tilde(self) -> "LinearFunction":
        return tilde(self)

    def identity(self) -> "LinearFunction":
        return IDENTITY

    def evaluate(self, c) -> Fraction:
        return evaluate(self, c)

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    # ---- I/O ------------------------------------------------------------
    def to_dict(self) -> Dict[str, str]:
        return {"a": format_rational(self.a), "b": format_rational(self.b)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any], approx: bool = False) -> "LinearFunction":
        try:
            return cls(parse_rational(data["a"], approx), parse_rational(data["b"], approx))
        except (KeyError, TypeError):
            raise ParseError(f"Linear function needs 'a' and 'b': {data!r}")

    def __str__(self) -> str:
        if self.b == 0:
            return f"{self.a}x"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}x {sign} {abs(self.b)}"


IDENTITY = LinearFunction(1, 0)


def classify(f: LinearFunction) -> FunctionKind:
    if f.is_identity:
        return FunctionKind.IDENTITY
    if f.a == 0:
        return FunctionKind.CONSTANT
    return FunctionKind.INCREASING if f.a > 0 else FunctionKind.DECREASING


def compose(h: LinearFunction, g: LinearFunction) -> LinearFunction:
    """h∘g: apply g first."""
    return LinearFunction(h.a * g.a, h.a * g.b + h.b)


def check_permutation(sigma: Sequence[int], n: int) -> Permutation:
    sigma = tuple(int(i) for i in sigma)
    if len(sigma) != n:
        raise LengthMismatchError(f"Permutation has {len(sigma)} entries for {n} elements")
    if sorted(sigma) != list(range(n)):
        raise ParseError(f"Not a permutation of 0..{n - 1}: {sigma}")
    return sigma


def compose_seq(fs: Sequence[E], sigma: Optional[Sequence[int]] = None, unit: Optional[E] = None) -> E:
    """Left fold of composition in the order σ(0), σ(1), …; σ defaults to the identity."""
    if sigma is None:
        sigma = range(len(fs))
    else:
        sigma = check_permutation(sigma, len(fs))
    if unit is None:
        unit = fs[0].identity() if len(fs) else IDENTITY
    acc = unit
    for i in sigma:
        acc = fs[i].after(acc)
    return acc


def evaluate(f: LinearFunction, c) -> Fraction:
    return f.a * Fraction(c) + f.b


@lru_cache(maxsize=4096)
def direction(f: LinearFunction, perturb_constants: bool = False) -> Direction:
    """Direction of (b, 1 − a); a constant is read as f + εx when perturbed."""
    if perturb_constants and f.a == 0:
        return Direction.of(f.b, 1, 0, -1)
    if f.is_identity:
        return BOT
    return Direction.of(f.b, 1 - f.a)


def tilde(f: LinearFunction) -> LinearFunction:
    return LinearFunction(f.a, -f.b)


def commute_sign(g: LinearFunction, h: LinearFunction) -> int:
    """Sign of g∘h − h∘g; +1 means h∘g < g∘h everywhere."""
    value = g.b * (1 - h.a) - h.b * (1 - g.a)
    return (value > 0) - (value < 0)


def is_colinear(fs: Iterable, perturb_constants: bool = False) -> bool:
    vectors = [d.vector for d in (f.direction(perturb_constants) for f in fs) if not d.is_bot]
    if len(vectors) <= 1:
        return True
    first = vectors[0]
    return all(cross_sign(first, v) == 0 for v in vectors[1:])


# ============================================================
# 🔁 Permutation Helpers
# ============================================================
def k_shift(sigma: Sequence[int], k: int) -> Permutation:
    """σ_k = (σ(k), …, σ(n−1), σ(0), …, σ(k−1))."""
    sigma = tuple(sigma)
    if not sigma:
        return sigma
    k %= len(sigma)
    return sigma[k:] + sigma[:k]


def swap_intervals(sigma: Sequence[int], l: int, m: int, r: int) -> Permutation:
    """σ_{l,m,r}: exchange the adjacent blocks [l, m] and [m+1, r] (0-based, inclusive)."""
    sigma = tuple(sigma)
    if not 0 <= l <= m < r < len(sigma):
        raise ValueError(f"Invalid interval swap ({l}, {m}, {r}) for length {len(sigma)}")
    return sigma[:l] + sigma[m + 1:r + 1] + sigma[l:m + 1] + sigma[r + 1:]


def parse_functions(items: Sequence[Any], approx: bool = False) -> List[LinearFunction]:
    return [LinearFunction.from_dict(item, approx) for item in items]
