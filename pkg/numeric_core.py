"""
Exact polar-angle predicates on 2D vectors with a symbolic infinitesimal.

A vector is ``base + eps * delta`` for an unspecified ε > 0. Every predicate
expands in powers of ε and reads the sign lexicographically, so no numeric ε
is ever chosen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Tuple

from errors import UnsupportedInstanceError

Rational = Fraction

_ZERO = Fraction(0)


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _lex_sign(*terms: Fraction) -> int:
    for term in terms:
        s = _sign(term)
        if s:
            return s
    return 0


@dataclass(frozen=True)
class EpsVector:
    x: Fraction
    y: Fraction
    dx: Fraction = _ZERO
    dy: Fraction = _ZERO

    def __post_init__(self):
        for name in ("x", "y", "dx", "dy"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def is_zero(self) -> bool:
        return not (self.x or self.y or self.dx or self.dy)

    def __neg__(self) -> "EpsVector":
        return EpsVector(-self.x, -self.y, -self.dx, -self.dy)

    def at(self, eps: float) -> Tuple[float, float]:
        return float(self.x) + eps * float(self.dx), float(self.y) + eps * float(self.dy)


@dataclass(frozen=True)
class Direction:
    """Polar direction of an EpsVector, or ⊥ when ``vector`` is None."""

    vector: Optional[EpsVector] = None

    @property
    def is_bot(self) -> bool:
        return self.vector is None

    @classmethod
    def of(cls, x, y, dx=0, dy=0) -> "Direction":
        v = EpsVector(x, y, dx, dy)
        return BOT if v.is_zero else cls(v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Direction):
            return NotImplemented
        if self.is_bot or other.is_bot:
            return self.is_bot and other.is_bot
        return cmp_polar(self, other) == 0

    def __hash__(self) -> int:
        if self.is_bot:
            return hash(None)
        # equal rays have leading terms on the same ray
        v = self.vector
        lead = (v.x, v.y) if (v.x or v.y) else (v.dx, v.dy)
        scale = max(abs(lead[0]), abs(lead[1]))
        return hash((Fraction(lead[0]) / scale, Fraction(lead[1]) / scale))

    def __repr__(self) -> str:
        if self.is_bot:
            return "Direction(⊥)"
        v = self.vector
        if v.dx or v.dy:
            return f"Direction(({v.x}, {v.y}) + ε({v.dx}, {v.dy}))"
        return f"Direction(({v.x}, {v.y}))"


BOT = Direction(None)


def cross_sign(u: EpsVector, v: EpsVector) -> int:
    """Sign of u × v at infinitesimal ε > 0, read order by order."""
    zeroth = u.x * v.y - u.y * v.x
    first = u.x * v.dy + u.dx * v.y - u.y * v.dx - u.dy * v.x
    second = u.dx * v.dy - u.dy * v.dx
    return _lex_sign(zeroth, first, second)


def dot_sign(u: EpsVector, v: EpsVector) -> int:
    zeroth = u.x * v.x + u.y * v.y
    first = u.x * v.dx + u.dx * v.x + u.y * v.dy + u.dy * v.y
    second = u.dx * v.dx + u.dy * v.dy
    return _lex_sign(zeroth, first, second)


def _half_plane(v: EpsVector) -> int:
    # 0: θ = 0, 1: open upper half, 2: θ = π, 3: open lower half
    ys = _lex_sign(v.y, v.dy)
    if ys > 0:
        return 1
    if ys < 0:
        return 3
    xs = _lex_sign(v.x, v.dx)
    return 0 if xs > 0 else 2


def _require(d: Direction) -> EpsVector:
    if d.is_bot:
        raise UnsupportedInstanceError("The identity direction ⊥ has no polar angle", code="bot-has-no-angle")
    return d.vector


def cmp_polar(d1: Direction, d2: Direction) -> int:
    """Three-way comparison of polar angles lifted to [0, 2π); 0 means same ray."""
    u, v = _require(d1), _require(d2)
    h1, h2 = _half_plane(u), _half_plane(v)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    return -cross_sign(u, v)


polar_key = cmp_to_key(cmp_polar)


def same_ray(d1: Direction, d2: Direction) -> bool:
    u, v = _require(d1), _require(d2)
    return cross_sign(u, v) == 0 and dot_sign(u, v) > 0


def ccw_offset_key(lo: Direction, d: Direction) -> Tuple[int, object]:
    # angle of d measured counterclockwise from lo, as a sortable key
    return (0 if cmp_polar(d, lo) >= 0 else 1, polar_key(d))


def in_closed_arc(d: Direction, lo: Direction, hi: Direction) -> bool:
    """True iff walking counterclockwise from ``lo``, ``d`` is met no later than ``hi``."""
    _require(d), _require(lo), _require(hi)
    return ccw_offset_key(lo, d) <= ccw_offset_key(lo, hi)


def antipode(d: Direction) -> Direction:
    return Direction(-_require(d))


def float_angle(d: Direction, eps: float = 1e-9) -> float:
    """Approximate θ in [0, 2π); test and --approx use only."""
    x, y = _require(d).at(eps)
    angle = math.atan2(y, x)
    return angle + 2 * math.pi if angle < 0 else angle
