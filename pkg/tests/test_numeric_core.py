from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from errors import UnsupportedInstanceError
from numeric_core import (
    BOT,
    Direction,
    EpsVector,
    antipode,
    cmp_polar,
    cross_sign,
    dot_sign,
    float_angle,
    in_closed_arc,
    polar_key,
    same_ray,
)

EAST = Direction.of(1, 0)
NORTH = Direction.of(0, 1)
WEST = Direction.of(-1, 0)
SOUTH = Direction.of(0, -1)


def test_axis_directions_sort_counterclockwise_from_zero():
    shuffled = [SOUTH, WEST, EAST, NORTH]
    assert sorted(shuffled, key=polar_key) == [EAST, NORTH, WEST, SOUTH]


def test_cross_sign_is_positive_for_counterclockwise_turn():
    assert cross_sign(EpsVector(1, 0), EpsVector(0, 1)) == 1
    assert cross_sign(EpsVector(0, 1), EpsVector(1, 0)) == -1
    assert cross_sign(EpsVector(2, 2), EpsVector(1, 1)) == 0


def test_cross_sign_reads_epsilon_terms_when_base_is_parallel():
    # (1, 0) vs (1, 0) + ε(0, 1): the perturbed one is slightly counterclockwise
    assert cross_sign(EpsVector(1, 0), EpsVector(1, 0, 0, 1)) == 1


def test_dot_sign():
    assert dot_sign(EpsVector(1, 0), EpsVector(-1, 0)) == -1
    assert dot_sign(EpsVector(1, 0), EpsVector(0, 1)) == 0
    assert dot_sign(EpsVector(0, 0, 1, 0), EpsVector(1, 0)) == 1


def test_perturbed_direction_below_zero_sorts_last():
    just_below = Direction.of(1, 0, 0, -1)
    assert cmp_polar(WEST, just_below) < 0
    assert cmp_polar(SOUTH, just_below) < 0
    assert cmp_polar(EAST, just_below) < 0


def test_pure_epsilon_vector_has_a_direction():
    d = Direction.of(0, 0, 0, 1)
    assert not d.is_bot
    assert d == NORTH


def test_zero_vector_is_bot():
    assert Direction.of(0, 0) is BOT
    assert BOT.is_bot
    assert BOT == Direction(None)


def test_bot_has_no_angle():
    with pytest.raises(UnsupportedInstanceError) as exc:
        cmp_polar(BOT, EAST)
    assert exc.value.code == "bot-has-no-angle"


def test_equal_rays_compare_equal_and_hash_alike():
    assert Direction.of(1, 1) == Direction.of(3, 3)
    assert hash(Direction.of(1, 1)) == hash(Direction.of(3, 3))
    assert Direction.of(1, 1) != Direction.of(-1, -1)


def test_hash_follows_the_ray_not_the_half_plane():
    assert hash(Direction.of(1, 0)) == hash(Direction.of(0, 0, 2, 0))
    upper = [Direction.of(x, y) for x, y in [(1, 1), (1, 2), (2, 1), (-1, 1), (-3, 1), (0, 1)]]
    assert len({hash(d) for d in upper}) == len(upper)
    assert len(set(upper + [Direction.of(2, 2), Direction.of(0, 5)])) == len(upper)


@settings(max_examples=100)
@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-2, 2), st.integers(-2, 2), st.integers(1, 5))
def test_equal_directions_share_a_hash(x, y, dx, dy, k):
    d1, d2 = Direction.of(x, y, dx, dy), Direction.of(k * x, k * y, k * dx, k * dy)
    assert d1 == d2
    assert hash(d1) == hash(d2)


def test_hash_ignores_int_versus_fraction_entries():
    assert hash(Direction.of(Fraction(1, 3), 1)) == hash(Direction.of(1, 3))


def test_same_ray_rejects_opposite_vectors():
    assert same_ray(Direction.of(1, 2), Direction.of(2, 4))
    assert not same_ray(Direction.of(1, 2), Direction.of(-1, -2))


def test_antipode():
    assert antipode(EAST) == WEST
    assert antipode(Direction.of(1, 1)) == Direction.of(-1, -1)


def test_closed_arc_wraps_through_zero():
    lo, hi = Direction.of(1, -1), Direction.of(1, 1)
    assert in_closed_arc(EAST, lo, hi)
    assert in_closed_arc(lo, lo, hi)
    assert in_closed_arc(hi, lo, hi)
    assert not in_closed_arc(WEST, lo, hi)


def test_closed_arc_with_equal_ends_is_one_ray():
    assert in_closed_arc(NORTH, NORTH, NORTH)
    assert not in_closed_arc(EAST, NORTH, NORTH)


coords = st.integers(-5, 5)


@settings(max_examples=200)
@given(coords, coords, coords, coords)
def test_exact_order_agrees_with_float_angle(x1, y1, x2, y2):
    if (x1, y1) == (0, 0) or (x2, y2) == (0, 0):
        return
    d1, d2 = Direction.of(x1, y1), Direction.of(x2, y2)
    t1, t2 = float_angle(d1), float_angle(d2)
    if abs(t1 - t2) > 1e-9:
        assert cmp_polar(d1, d2) == (-1 if t1 < t2 else 1)
    else:
        assert cmp_polar(d1, d2) == 0


@given(coords, coords)
def test_cmp_polar_is_antisymmetric_against_antipode(x, y):
    if (x, y) == (0, 0):
        return
    d = Direction.of(x, y)
    assert cmp_polar(d, d) == 0
    assert cmp_polar(d, antipode(d)) == -cmp_polar(antipode(d), d) != 0
