from fractions import Fraction
from math import factorial

import pytest

import utils
from errors import CapExceededError
from helpers import lf
from linfun import IDENTITY
from oracle import brute_min_composition, brute_min_matrix, brute_target, matrix_objective


def test_intro_minimum_and_maximum(intro_functions):
    low = brute_min_composition(intro_functions)
    high = brute_min_composition(intro_functions, 0, "max")
    assert low.best_value == Fraction(-11, 2)
    assert low.all_optimal_permutations == [(0, 1, 2)]
    assert high.best_value == 8
    assert high.all_optimal_permutations == [(1, 0, 2)]


def test_every_permutation_is_evaluated(example1_functions):
    report = brute_min_composition(example1_functions)
    assert report.evaluated_count == factorial(5)
    assert report.best_value == -23
    assert report.best_composite == lf(2, -23)


def test_empty_instance_evaluates_the_identity_at_c():
    report = brute_min_composition([], Fraction(5, 3))
    assert report.best_value == Fraction(5, 3)
    assert report.best_composite == IDENTITY


def test_example2_has_two_optimal_orders(example2_functions):
    report = brute_min_composition(example2_functions)
    assert report.best_value == -1
    assert sorted(report.all_optimal_permutations) == [(0, 1, 2, 3), (1, 0, 2, 3)]


def test_cap_is_enforced():
    fs = [lf(2, i) for i in range(4)]
    with pytest.raises(CapExceededError) as exc:
        brute_min_composition(fs, cap=3)
    assert exc.value.exit_code == 4


def test_default_cap_comes_from_settings(monkeypatch):
    monkeypatch.setattr(utils, "ORACLE_CAP_LINEAR", 2)
    with pytest.raises(CapExceededError):
        brute_min_composition([lf(2, 0), lf(3, 1), lf(1, 1)])


def test_matrix_objective_for_three_by_three():
    shift = [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
    scale = [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    w, y = (1, 0, 0), (0, 0, 1)
    assert matrix_objective([shift, shift, scale], w, y, (0, 1, 2)) == 2
    report = brute_min_matrix([shift, shift, scale], w, y, sense="max")
    assert report.best_value == 2
    assert report.evaluated_count == 6


def test_target_minimizes_distance(intro_functions):
    report = brute_target(intro_functions, 0, 2)
    # reachable values are -11/2, 1/2, 8, 13/2, -1, 7/2
    assert report.best_value == Fraction(3, 2)
    assert report.all_optimal_permutations == [(0, 2, 1), (2, 1, 0)]
    assert report.best_composite.evaluate(0) == Fraction(1, 2)
