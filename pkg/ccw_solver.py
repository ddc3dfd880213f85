"""
O(n log n) ordering for nondecreasing linear functions.

Non-identity functions are sorted by the polar angle of their (perturbed)
vectors; some cyclic shift of that counterclockwise order is optimal. The
certificate, counting and enumeration routines decide optimality from the
angle structure alone, without walking the n! permutations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, islice, permutations, product
from math import factorial, prod
from typing import Any, Iterator, List, Optional, Sequence, Tuple

from errors import UnsupportedInstanceError
from linfun import (
    LinearFunction,
    Permutation,
    check_permutation,
    commute_sign,
    compose_seq,
    is_colinear,
    k_shift,
)
from numeric_core import (
    Direction,
    antipode,
    ccw_offset_key,
    cmp_polar,
    in_closed_arc,
    polar_key,
    same_ray,
)

logger = logging.getLogger(__name__)


class CaseTag(str, Enum):
    COLINEAR = "colinear"
    POTENTIALLY_IDENTICAL = "potentially_identical"
    GENERAL = "general"
    CONSTANT_PRESENT = "constant_present"
    FPT = "fpt"


@dataclass(frozen=True)
class OrderingResult:
    sigma: Permutation
    composite: Any
    value: Fraction
    case_tag: CaseTag
    k: int = 0


@dataclass(frozen=True)
class InstanceClass:
    tag: CaseTag
    boundary: Optional[Tuple[Direction, Direction]] = None
    beta_min: Optional[Fraction] = None


def require_nondecreasing(fs: Sequence) -> None:
    for i, f in enumerate(fs):
        if f.slope < 0:
            raise UnsupportedInstanceError(
                f"Element {i + 1} has negative slope; use the general solver",
                code="not-nondecreasing",
            )


def _require_monotone(fs: Sequence) -> None:
    for i, f in enumerate(fs):
        if f.slope <= 0:
            raise UnsupportedInstanceError(
                f"Counting needs strictly increasing functions; element {i + 1} is not",
                code="counting-unsupported",
            )


def sort_counterclockwise(fs: Sequence) -> Permutation:
    """Stable sort of non-identity elements by perturbed angle, identities appended."""
    require_nondecreasing(fs)
    non = [i for i, f in enumerate(fs) if not f.is_identity]
    ids = [i for i, f in enumerate(fs) if f.is_identity]
    non.sort(key=lambda i: polar_key(fs[i].direction(True)))
    return tuple(non + ids)


def _best_shift(fs: Sequence, order: List[int]) -> int:
    """Index k of the rotation of ``order`` with the smallest composite, ties to the lowest k."""
    m = len(order)
    if m <= 1:
        return 0
    unit = fs[order[0]].identity()
    suffix = [unit] * (m + 1)
    for k in range(m - 1, -1, -1):
        suffix[k] = suffix[k + 1].after(fs[order[k]])
    best_k, best_key = 0, None
    prefix = unit
    for k in range(m):
        key = prefix.after(suffix[k]).order_key
        if best_key is None or key < best_key:
            best_k, best_key = k, key
        prefix = fs[order[k]].after(prefix)
    return best_k


def _case_tag(fs: Sequence, order: List[int]) -> CaseTag:
    if any(f.slope == 0 for f in fs):
        return CaseTag.CONSTANT_PRESENT
    if is_colinear(fs):
        return CaseTag.COLINEAR
    if order and compose_seq([fs[i] for i in order]).is_identity:
        return CaseTag.POTENTIALLY_IDENTICAL
    return CaseTag.GENERAL


def solve_min(fs: Sequence, c=0) -> OrderingResult:
    order = list(sort_counterclockwise(fs))
    non = [i for i in order if not fs[i].is_identity]
    ids = order[len(non):]
    k = _best_shift(fs, non)
    sigma = tuple(non[k:] + non[:k] + ids)
    composite = compose_seq(fs, sigma)
    logger.debug("ccw solve: n=%d, identities=%d, best shift=%d", len(fs), len(ids), k)
    return OrderingResult(sigma, composite, composite.evaluate(c), _case_tag(fs, non))


def solve_max(fs: Sequence, c=0) -> OrderingResult:
    res = solve_min([f.tilde() for f in fs], c)
    composite = compose_seq(fs, res.sigma)
    return OrderingResult(res.sigma, composite, composite.evaluate(c), res.case_tag)


def classify_instance(fs: Sequence[LinearFunction]) -> InstanceClass:
    require_nondecreasing(fs)
    constants = [f.b for f in fs if f.a == 0]
    if constants:
        return InstanceClass(CaseTag.CONSTANT_PRESENT, beta_min=min(constants))
    res = solve_min(fs)
    if res.case_tag is not CaseTag.GENERAL:
        return InstanceClass(res.case_tag)
    non = [i for i in res.sigma if not fs[i].is_identity]
    return InstanceClass(CaseTag.GENERAL, boundary=(fs[non[0]].direction(), fs[non[-1]].direction()))


def _directions(fs: Sequence, sigma: Sequence[int], perturb: bool) -> List[Direction]:
    return [fs[i].direction(perturb) for i in sigma if not fs[i].is_identity]


def _is_cyclically_sorted(dirs: List[Direction]) -> bool:
    m = len(dirs)
    if m <= 1:
        return True
    descents = sum(1 for i in range(m) if cmp_polar(dirs[i], dirs[(i + 1) % m]) > 0)
    return descents <= 1


def is_counterclockwise(fs: Sequence, sigma: Sequence[int]) -> bool:
    require_nondecreasing(fs)
    sigma = check_permutation(sigma, len(fs))
    return _is_cyclically_sorted(_directions(fs, sigma, True))


def is_clockwise(fs: Sequence, sigma: Sequence[int]) -> bool:
    require_nondecreasing(fs)
    sigma = check_permutation(sigma, len(fs))
    return _is_cyclically_sorted(_directions(fs, sigma, True)[::-1])


# ============================================================
# ✅ Optimality Certificates
# ============================================================
def _arc_condition(fs: Sequence[LinearFunction], sequence: Sequence[int]) -> bool:
    """θ(f^σ) + π ∈ [θ(last), θ(first)] over the non-identity members of ``sequence``."""
    composite = compose_seq([fs[i] for i in sequence])
    if composite.is_identity:
        return True
    return in_closed_arc(
        antipode(composite.direction()),
        fs[sequence[-1]].direction(),
        fs[sequence[0]].direction(),
    )


def _constant_certificate(fs: Sequence[LinearFunction], sigma: Permutation) -> bool:
    beta_min = min(f.b for f in fs if f.a == 0)
    q = max(pos for pos, i in enumerate(sigma) if fs[i].a == 0)
    tail = sigma[q:]
    d_min = LinearFunction(0, beta_min).direction()

    if all(f.is_identity or in_closed_arc(f.direction(), antipode(d_min), d_min) for f in fs):
        # the optimum is β_min itself
        return fs[tail[0]].b == beta_min and is_colinear([fs[i] for i in tail])

    # σ = μ∘ρ: μ keeps the tail and reorders the head counterclockwise
    tail_dirs = _directions(fs, tail, False)
    head_dirs = _directions(fs, sigma[:q], False)
    first, last = tail_dirs[0], tail_dirs[-1]
    keys = [ccw_offset_key(first, d) for d in tail_dirs]
    if any(keys[i] > keys[i + 1] for i in range(len(keys) - 1)):
        return False
    for d in head_dirs:
        if not (ccw_offset_key(first, d) >= keys[-1] or same_ray(d, first)):
            return False
    mu_first = min(head_dirs, key=lambda d: ccw_offset_key(last, d)) if head_dirs else first
    value = compose_seq(fs, sigma)
    return in_closed_arc(antipode(value.direction()), last, mu_first)


def is_optimal_certificate(fs: Sequence[LinearFunction], sigma: Sequence[int], c=0) -> bool:
    """Decide whether σ is a minimum ordering from the angle structure alone."""
    require_nondecreasing(fs)
    sigma = check_permutation(sigma, len(fs))
    if any(f.a == 0 for f in fs):
        return _constant_certificate(fs, sigma)
    if is_colinear(fs):
        return True
    if not _is_cyclically_sorted(_directions(fs, sigma, True)):
        return False
    return _arc_condition(fs, [i for i in sigma if not fs[i].is_identity])


def is_locally_optimal(fs: Sequence[LinearFunction], sigma: Sequence[int]) -> bool:
    """No adjacent-block swap σ_{l,m,r} gives a strictly smaller composite."""
    n = len(fs)
    sigma = check_permutation(sigma, n)
    seq = [fs[i] for i in sigma]
    unit = LinearFunction(1, 0)

    span = {}
    for i in range(n):
        acc = unit
        for j in range(i, n):
            acc = seq[j].after(acc)
            span[i, j] = acc

    def block(i: int, j: int) -> LinearFunction:
        return span[i, j] if i <= j else unit

    monotone = all(f.a > 0 for f in fs)
    full = block(0, n - 1)
    for l in range(n):
        for m in range(l, n - 1):
            left = block(l, m)
            for r in range(m + 1, n):
                right = block(m + 1, r)
                if monotone:
                    if commute_sign(left, right) < 0:
                        return False
                    continue
                swapped = block(r + 1, n - 1).after(left.after(right.after(block(0, l - 1))))
                assert swapped.a == full.a, "swapped composites must share a slope"
                if swapped.b < full.b:
                    return False
    return True


# ============================================================
# 🔢 Counting and Enumeration (strictly increasing inputs)
# ============================================================
def _ray_blocks(fs: Sequence[LinearFunction], order: List[int]) -> List[List[int]]:
    blocks: List[List[int]] = []
    for i in order:
        if blocks and same_ray(fs[blocks[-1][0]].direction(), fs[i].direction()):
            blocks[-1].append(i)
        else:
            blocks.append([i])
    return blocks


def _optimal_layouts(fs: Sequence[LinearFunction]) -> Iterator[List[List[int]]]:
    """
    Yield the counterclockwise layouts of the non-identity functions that are
    optimal. A layout is a list of parts; each part may be permuted freely.
    """
    order = [i for i in sort_counterclockwise(fs) if not fs[i].is_identity]
    if not order:
        yield []
        return
    blocks = _ray_blocks(fs, order)
    always = _case_tag(fs, order) is CaseTag.POTENTIALLY_IDENTICAL
    g = len(blocks)
    for j in range(g):
        rotated = blocks[j:] + blocks[:j]
        if always or _arc_condition(fs, [i for part in rotated for i in part]):
            yield rotated
        block = blocks[j]
        middle = blocks[j + 1:] + blocks[:j]
        for size in range(1, len(block)):
            for head in combinations(block, size):
                rest = [i for i in block if i not in head]
                layout = [list(head)] + middle + [rest]
                if always or _arc_condition(fs, [i for part in layout for i in part]):
                    yield layout


def count_optimal(fs: Sequence[LinearFunction]) -> int:
    _require_monotone(fs)
    n = len(fs)
    m = sum(1 for f in fs if not f.is_identity)
    if is_colinear(fs):
        return factorial(n)
    interleavings = factorial(n) // factorial(m)
    total = sum(prod(factorial(len(part)) for part in layout) for layout in _optimal_layouts(fs))
    logger.debug("count: n=%d, non-identity=%d, layouts weight=%d", n, m, total)
    return total * interleavings


def _interleave(core: Tuple[int, ...], ids: List[int], n: int) -> Iterator[Permutation]:
    for slots in combinations(range(n), len(ids)):
        for id_order in permutations(ids):
            out, it_core, it_ids = [], iter(core), iter(id_order)
            slot_set = set(slots)
            for pos in range(n):
                out.append(next(it_ids) if pos in slot_set else next(it_core))
            yield tuple(out)


def _enumerate_all(fs: Sequence[LinearFunction]) -> Iterator[Permutation]:
    n = len(fs)
    if is_colinear(fs):
        yield from permutations(range(n))
        return
    ids = [i for i, f in enumerate(fs) if f.is_identity]
    for layout in _optimal_layouts(fs):
        for parts in product(*(permutations(part) for part in layout)):
            core = tuple(i for part in parts for i in part)
            yield from _interleave(core, ids, n)


def enumerate_optimal(fs: Sequence[LinearFunction], limit: Optional[int] = None) -> Iterator[Permutation]:
    _require_monotone(fs)
    snapshot = tuple(fs)
    return islice(_enumerate_all(snapshot), limit)


# ============================================================
# 📈 Shift Profiles and Scheduling Rules
# ============================================================
def shift_profile(fs: Sequence[LinearFunction], sigma: Sequence[int], c=0) -> List[Fraction]:
    sigma = check_permutation(sigma, len(fs))
    return [compose_seq(fs, k_shift(sigma, k)).evaluate(c) for k in range(len(sigma))]


def is_cyclically_unimodal(values: Sequence[Fraction]) -> bool:
    m = len(values)
    steps = [(values[(i + 1) % m] > values[i]) - (values[(i + 1) % m] < values[i]) for i in range(m)]
    steps = [s for s in steps if s]
    if not steps:
        return True
    changes = sum(1 for i in range(len(steps)) if steps[i] != steps[(i + 1) % len(steps)])
    return changes <= 2


def is_strictly_unimodal(values: Sequence[Fraction]) -> bool:
    """Unimodal, and equal neighbours sit only at the cyclic minimum or maximum."""
    if not is_cyclically_unimodal(values):
        return False
    m = len(values)
    low, high = min(values), max(values)
    for i in range(m):
        v, w = values[i], values[(i + 1) % m]
        if m > 1 and v == w and v not in (low, high):
            return False
    return True


def deterioration_order(fs: Sequence[LinearFunction]) -> Permutation:
    """Jobs f_i = a_i x + b_i with a_i > 1, b_i > 0, ordered by (a_i − 1)/b_i nonincreasing."""
    for i, f in enumerate(fs):
        if not (f.a > 1 and f.b > 0):
            raise UnsupportedInstanceError(
                f"Function {i + 1} is not a deteriorating job (needs a > 1, b > 0)",
                code="not-deteriorating",
            )
    return tuple(sorted(range(len(fs)), key=lambda i: (fs[i].a - 1) / fs[i].b, reverse=True))
