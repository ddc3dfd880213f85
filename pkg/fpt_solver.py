"""
Exact ordering for general linear functions, parameterized by the number k
of decreasing functions.

Monotone functions (constants read with their perturbed angle) are grouped
by ray and split into a lower part L, taken counterclockwise, and an upper
part U, taken clockwise. For each split and each pair of rotations a subset
DP over the decreasing functions finds the best interleaving.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ccw_solver import CaseTag, OrderingResult, require_nondecreasing, solve_min
from errors import UnsupportedInstanceError
from linfun import Permutation, check_permutation, compose_seq
from numeric_core import Direction, cmp_polar, polar_key

logger = logging.getLogger(__name__)

ZERO = Direction.of(1, 0)
PI = Direction.of(-1, 0)


@dataclass(frozen=True)
class AngleGroup:
    """Functions sharing one ray, composed in input order."""

    element: object
    members: Tuple[int, ...]

    @property
    def angle(self) -> Direction:
        return self.element.direction(True)


@dataclass(frozen=True)
class LUCandidate:
    psi1: Direction
    psi2: Direction
    lower: Tuple[AngleGroup, ...]
    upper: Tuple[AngleGroup, ...]


@dataclass(frozen=True)
class LUPartition:
    lower: Tuple[int, ...]
    upper: Tuple[int, ...]
    intervals: Tuple[Tuple[int, ...], ...]


def group_equal_angles(fs: Sequence, indices: Optional[Sequence[int]] = None) -> List[AngleGroup]:
    """Group nondecreasing, non-identity elements by perturbed ray, in counterclockwise order."""
    if indices is None:
        indices = range(len(fs))
    indices = list(indices)
    require_nondecreasing([fs[i] for i in indices])
    order = sorted(indices, key=lambda i: polar_key(fs[i].direction(True)))

    groups: List[List[int]] = []
    for i in order:
        if groups and cmp_polar(fs[groups[-1][0]].direction(True), fs[i].direction(True)) == 0:
            groups[-1].append(i)
        else:
            groups.append([i])

    out = []
    for members in groups:
        members.sort()
        out.append(AngleGroup(compose_seq([fs[i] for i in members]), tuple(members)))
    return out


def _in_window(d: Direction, psi1: Direction, psi2: Direction) -> bool:
    return cmp_polar(psi1, d) <= 0 and cmp_polar(d, psi2) <= 0


def _rotations(items: Sequence) -> List[Tuple]:
    items = tuple(items)
    if not items:
        return [()]
    return [items[k:] + items[:k] for k in range(len(items))]


def enumerate_candidates(groups: Sequence[AngleGroup]) -> Iterator[LUCandidate]:
    """
    Every (ψ1, ψ2) split with ψ1 ∈ (0, π] and ψ2 ∈ [π, 2π) drawn from the group
    angles, with every counterclockwise rotation of L and clockwise rotation of U.
    ``groups`` must be counterclockwise sorted with pairwise distinct rays.
    """
    firsts = [g.angle for g in groups if cmp_polar(ZERO, g.angle) < 0 and cmp_polar(g.angle, PI) < 0] + [PI]
    seconds = [g.angle for g in groups if cmp_polar(PI, g.angle) < 0] + [PI]

    seen = set()
    for psi1 in firsts:
        for psi2 in seconds:
            chosen = tuple(_in_window(g.angle, psi1, psi2) for g in groups)
            if chosen in seen:
                continue
            seen.add(chosen)
            lower = [g for g, keep in zip(groups, chosen) if keep]
            upper = [g for g, keep in zip(groups, chosen) if not keep][::-1]
            for lo in _rotations(lower):
                for up in _rotations(upper):
                    yield LUCandidate(psi1, psi2, lo, up)


# ============================================================
# 🧮 LU-Ordered Subset DP
# ============================================================
def lu_ordered_optimal(lower: Sequence, upper: Sequence, decreasing: Sequence) -> Tuple[Permutation, object]:
    """
    Best composite that applies ``lower`` in the given order inside even-parity
    intervals, ``upper`` in the given order inside odd-parity intervals, and all
    of ``decreasing`` in between.

    Returns the application order as indices into ``lower + upper + decreasing``
    together with the composite.
    """
    k = len(decreasing)
    if k == 0:
        raise UnsupportedInstanceError(
            "The subset DP needs at least one decreasing function",
            code="no-decreasing-function",
        )
    n_l, n_u = len(lower), len(upper)
    unit = decreasing[0].identity()
    full = (1 << k) - 1

    value: Dict[Tuple[int, int, int], object] = {(0, 0, 0): unit}
    choice: Dict[Tuple[int, int, int], Tuple[str, int]] = {}

    masks = sorted(range(full + 1), key=lambda m: bin(m).count("1"))
    for s in range(n_l + 1):
        for t in range(n_u + 1):
            for mask in masks:
                if s == t == mask == 0:
                    continue
                if mask == 0 and ((t > 0 and k % 2 == 0) or (s > 0 and k % 2 == 1)):
                    continue
                minimize = (k - bin(mask).count("1")) % 2 == 0

                best, best_choice = None, None
                for j in range(k):
                    if not mask >> j & 1:
                        continue
                    prev = value.get((s, t, mask & ~(1 << j)))
                    if prev is None:
                        continue
                    best, best_choice = _better(best, best_choice, decreasing[j].after(prev), ("g", j), minimize)
                if minimize and s > 0:
                    prev = value.get((s - 1, t, mask))
                    if prev is not None:
                        best, best_choice = _better(best, best_choice, lower[s - 1].after(prev), ("p", s - 1), minimize)
                if not minimize and t > 0:
                    prev = value.get((s, t - 1, mask))
                    if prev is not None:
                        best, best_choice = _better(best, best_choice, upper[t - 1].after(prev), ("q", t - 1), minimize)

                if best is not None:
                    value[s, t, mask] = best
                    choice[s, t, mask] = best_choice

    final = value.get((n_l, n_u, full))
    if final is None:
        raise UnsupportedInstanceError("No LU-ordered permutation exists for this split", code="empty-lu-split")

    order: List[int] = []
    s, t, mask = n_l, n_u, full
    while (s, t, mask) != (0, 0, 0):
        kind, j = choice[s, t, mask]
        if kind == "p":
            order.append(j)
            s -= 1
        elif kind == "q":
            order.append(n_l + j)
            t -= 1
        else:
            order.append(n_l + n_u + j)
            mask &= ~(1 << j)
    order.reverse()
    return tuple(order), final


def _better(best, best_choice, candidate, cand_choice, minimize: bool):
    if best is None:
        return candidate, cand_choice
    assert candidate.slope == best.slope, "composites of one multiset must share a slope"
    if minimize and candidate.order_key < best.order_key:
        return candidate, cand_choice
    if not minimize and candidate.order_key > best.order_key:
        return candidate, cand_choice
    return best, best_choice


# ============================================================
# 🚀 Solvers
# ============================================================
def solve_general_min(fs: Sequence, c=0) -> OrderingResult:
    decreasing = [i for i, f in enumerate(fs) if f.slope < 0]
    k = len(decreasing)
    if k == 0:
        return solve_min(fs, c)

    identities = [i for i, f in enumerate(fs) if f.slope >= 0 and f.is_identity]
    monotone = [i for i, f in enumerate(fs) if f.slope >= 0 and not f.is_identity]
    groups = group_equal_angles(fs, monotone)
    g_elems = [fs[i] for i in decreasing]

    best_key, best_sigma, candidates = None, None, 0
    for cand in enumerate_candidates(groups):
        candidates += 1
        order, composite = lu_ordered_optimal(
            [g.element for g in cand.lower], [g.element for g in cand.upper], g_elems
        )
        tokens = list(cand.lower) + list(cand.upper)
        sigma: List[int] = []
        for j in order:
            if j < len(tokens):
                sigma.extend(tokens[j].members)
            else:
                sigma.append(decreasing[j - len(tokens)])
        sigma = tuple(sigma + identities)
        key = (composite.order_key, sigma)
        if best_key is None or key < best_key:
            best_key, best_sigma = key, sigma

    logger.debug("fpt solve: n=%d, k=%d, groups=%d, candidates=%d", len(fs), k, len(groups), candidates)
    composite = compose_seq(fs, best_sigma)
    return OrderingResult(best_sigma, composite, composite.evaluate(c), CaseTag.FPT, k)


def solve_general_max(fs: Sequence, c=0) -> OrderingResult:
    res = solve_general_min([f.tilde() for f in fs], c)
    composite = compose_seq(fs, res.sigma)
    return OrderingResult(res.sigma, composite, composite.evaluate(c), res.case_tag, res.k)


def lu_partition(fs: Sequence, sigma: Sequence[int]) -> LUPartition:
    """Split σ at its decreasing functions; intervals with k − j even form L, odd form U."""
    sigma = check_permutation(sigma, len(fs))
    intervals: List[List[int]] = [[]]
    for i in sigma:
        if fs[i].slope < 0:
            intervals.append([])
        else:
            intervals[-1].append(i)
    k = len(intervals) - 1
    lower = tuple(i for j, part in enumerate(intervals) if (k - j) % 2 == 0 for i in part)
    upper = tuple(i for j, part in enumerate(intervals) if (k - j) % 2 == 1 for i in part)
    return LUPartition(lower, upper, tuple(tuple(part) for part in intervals))
