from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, settings

from errors import InternalSolverError, ParseError, UnsupportedInstanceError
from helpers import jobs, maxplus_matrices
from maxplus import (
    MP_IDENTITY,
    ZERO,
    MaxPlusMatrix2,
    MaxPlusScalar,
    flowshop_makespan,
    flowshop_to_maxplus,
    gamma_embedding,
    johnson_rule,
    kappa_blb,
    kappa_full,
    kappa_star,
    mp_commutes,
    mp_family_commutes,
    mp_multiply,
    mp_objective,
    mp_objective_closed_form,
    solve_maxplus_min,
    sort_by_key,
)
from oracle import brute_min_matrix, brute_min_maxplus

FLOWSHOP = [(Fraction(3), Fraction(2)), (Fraction(1), Fraction(4))]


def test_scalar_semiring_operations():
    two, three = MaxPlusScalar(2), MaxPlusScalar(3)
    assert two.oplus(three) == three
    assert two.otimes(three) == MaxPlusScalar(5)
    assert two.otimes(ZERO) == ZERO
    assert ZERO.oplus(two) == two
    assert ZERO < MaxPlusScalar(-100)


def test_scalar_parse_accepts_minus_infinity():
    assert MaxPlusScalar.parse("-inf").is_zero
    assert MaxPlusScalar.parse("5/2") == MaxPlusScalar(Fraction(5, 2))
    assert str(ZERO) == "-inf"


def test_from_dict_requires_all_entries():
    with pytest.raises(ParseError):
        MaxPlusMatrix2.from_dict({"a": 1, "b": 2})


def test_identity_is_neutral():
    n = MaxPlusMatrix2(1, 3, 2)
    assert mp_multiply(MP_IDENTITY, n) == n
    assert mp_multiply(n, MP_IDENTITY) == n


def test_product_entries_two_ways():
    n1, n2 = MaxPlusMatrix2(1, 3, 2), MaxPlusMatrix2(0, 1, 1)
    combined = mp_multiply(n2, n1)
    assert combined == MaxPlusMatrix2(1, 3, 3)
    assert mp_objective([n1, n2], (0, 1)) == mp_objective_closed_form([n1, n2], (0, 1)) == MaxPlusScalar(3)
    assert mp_objective([n1, n2], (1, 0)) == MaxPlusScalar(4)


def test_single_matrix_objective_is_b():
    assert mp_objective([MaxPlusMatrix2(4, 7, 1)], (0,)) == MaxPlusScalar(7)


@settings(max_examples=60)
@given(maxplus_matrices(1, 3), maxplus_matrices(1, 3), maxplus_matrices(1, 3))
def test_multiplication_is_associative(x, y, z):
    a, b, c = x[0], y[0], z[0]
    assert mp_multiply(mp_multiply(a, b), c) == mp_multiply(a, mp_multiply(b, c))


@settings(max_examples=60)
@given(maxplus_matrices(1, 5))
def test_closed_form_matches_product(ns):
    for sigma in permutations(range(len(ns))):
        assert mp_objective(ns, sigma) == mp_objective_closed_form(ns, sigma)


# ============================================================
# Keys and ordering
# ============================================================
def test_kappa_star_cases():
    assert kappa_star(MaxPlusMatrix2(3, 5, 1)) == (-1, 2)
    assert kappa_star(MaxPlusMatrix2(2, 9, 2)) == (0, 0)
    assert kappa_star(MaxPlusMatrix2(1, 5, 3)) == (1, -2)


def test_infinite_entry_is_rejected_by_keys():
    with pytest.raises(UnsupportedInstanceError) as exc:
        kappa_star(MaxPlusMatrix2(1, ZERO, 2))
    assert exc.value.code == "infinite-entry-unsupported"


def test_unknown_key_name():
    with pytest.raises(ParseError):
        solve_maxplus_min([MaxPlusMatrix2(1, 2, 3)], key="kappa_unknown")


def test_maxplus_fixture_instance():
    ns = [MaxPlusMatrix2(2, 5, 3), MaxPlusMatrix2(4, 5, 1)]
    res = solve_maxplus_min(ns)
    assert res.sigma == (1, 0)
    assert res.value == MaxPlusScalar(7)


@settings(max_examples=80, deadline=None)
@given(maxplus_matrices(1, 6))
def test_kappa_star_order_is_optimal(ns):
    assert solve_maxplus_min(ns).value == brute_min_maxplus(ns).best_value


@settings(max_examples=60, deadline=None)
@given(maxplus_matrices(1, 6))
def test_alternative_keys_reach_the_same_objective(ns):
    best = mp_objective(ns, sort_by_key(ns, kappa_star))
    assert mp_objective(ns, sort_by_key(ns, kappa_full)) == best
    assert mp_objective(ns, sort_by_key(ns, kappa_blb)) == best


# ============================================================
# Flow shop
# ============================================================
def test_flowshop_example():
    assert johnson_rule(FLOWSHOP) == (1, 0)
    assert flowshop_makespan(FLOWSHOP, (1, 0)) == 7
    assert flowshop_makespan(FLOWSHOP, (0, 1)) == 9
    assert solve_maxplus_min(flowshop_to_maxplus(FLOWSHOP)).sigma == (1, 0)


def test_flowshop_rejects_negative_times():
    with pytest.raises(UnsupportedInstanceError) as exc:
        flowshop_to_maxplus([(Fraction(-1), Fraction(2))])
    assert exc.value.code == "negative-processing-time"


def test_equal_processing_times_make_every_order_tie():
    same = [(Fraction(2), Fraction(2))] * 3
    spans = {flowshop_makespan(same, sigma) for sigma in permutations(range(3))}
    assert spans == {8}


@settings(max_examples=80, deadline=None)
@given(jobs(1, 6))
def test_maxplus_objective_is_the_makespan(js):
    ns = flowshop_to_maxplus(js)
    for sigma in [tuple(range(len(js))), johnson_rule(js)]:
        assert mp_objective(ns, sigma).value == flowshop_makespan(js, sigma)


@settings(max_examples=80, deadline=None)
@given(jobs(1, 6))
def test_johnson_matches_kappa_star(js):
    ns = flowshop_to_maxplus(js)
    assert flowshop_makespan(js, johnson_rule(js)) == solve_maxplus_min(ns).value.value


# ============================================================
# Commutation and embedding
# ============================================================
def test_commuting_pairs():
    assert mp_commutes(MaxPlusMatrix2(3, 5, 1), MaxPlusMatrix2(3, 5, 1))
    assert mp_commutes(MaxPlusMatrix2(3, 5, 1), MaxPlusMatrix2(4, 6, 2))
    assert not mp_commutes(MaxPlusMatrix2(3, 5, 1), MaxPlusMatrix2(1, 5, 3))


def test_commutation_rule_matches_direct_products_on_small_grid():
    for a1, b1, d1, a2, b2, d2 in product(range(5), repeat=6):
        n1, n2 = MaxPlusMatrix2(a1, b1, d1), MaxPlusMatrix2(a2, b2, d2)
        direct = mp_multiply(n1, n2) == mp_multiply(n2, n1)
        assert mp_family_commutes([n1, n2]) == direct
        assert mp_commutes(n1, n2) == direct


def test_commutation_disagreement_is_an_error(monkeypatch):
    import maxplus

    monkeypatch.setattr(maxplus, "mp_family_commutes", lambda ns: False)
    with pytest.raises(InternalSolverError) as exc:
        mp_commutes(MaxPlusMatrix2(3, 5, 1), MaxPlusMatrix2(3, 5, 1))
    assert exc.value.code == "internal-inconsistency"


def test_embedding_rejects_fractions():
    with pytest.raises(UnsupportedInstanceError) as exc:
        gamma_embedding([MaxPlusMatrix2(Fraction(1, 2), 1, 1)])
    assert exc.value.code == "non-integer-exponent"


@settings(max_examples=30, deadline=None)
@given(maxplus_matrices(1, 5, hi=3))
def test_embedding_preserves_strict_order(ns):
    ms, w, y = gamma_embedding(ns)
    embedded = brute_min_matrix(ms, w, y)
    tropical = brute_min_maxplus(ns)
    assert set(embedded.all_optimal_permutations) <= set(tropical.all_optimal_permutations)
