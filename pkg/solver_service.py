"""
Instance dispatch shared by the CLI and the HTTP routes.

Every entry point takes a validated InstanceFile and returns a plain dict
ready for JSON: permutations are 1-based, rationals are "p/q" strings.
"""

import json
import logging
import random
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

import utils
from ccw_solver import count_optimal, enumerate_optimal, is_optimal_certificate
from errors import ParseError, UnsupportedInstanceError
from fpt_solver import lu_ordered_optimal, solve_general_max, solve_general_min
from linfun import LinearFunction, compose_seq, parse_functions
from matrix2 import Matrix2, solve_matrix2
from maxplus import (
    MaxPlusMatrix2,
    flowshop_makespan,
    flowshop_to_maxplus,
    johnson_rule,
    mp_objective,
    solve_maxplus_min,
)
from oracle import brute_min_composition, brute_min_matrix, brute_min_maxplus, brute_target, matrix_objective
from schemas import InstanceFile
from utils import format_rational, one_based, parse_rational, parse_vector, zero_based

logger = logging.getLogger(__name__)


# ============================================================
# 📥 Loading
# ============================================================
def parse_instance(data: Any) -> InstanceFile:
    if not isinstance(data, dict):
        raise ParseError("Instance must be a JSON object")
    try:
        return InstanceFile(**data)
    except ValidationError as e:
        raise ParseError(f"Invalid instance: {e}")


def read_instance(path: str) -> InstanceFile:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise ParseError(f"Cannot read instance file {path}: {e}")
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e}")
    return parse_instance(data)


def linear_functions(inst: InstanceFile, approx: bool = False) -> List[LinearFunction]:
    return parse_functions(inst.functions, approx)


def matrices_2x2(inst: InstanceFile, approx: bool = False) -> Tuple[List[Matrix2], List[Fraction], List[Fraction]]:
    ms = [Matrix2.from_list(m, approx) for m in inst.matrices]
    return ms, parse_vector(inst.w, 2, approx), parse_vector(inst.y, 2, approx)


def matrices_square(inst: InstanceFile, approx: bool = False):
    size = len(inst.w)
    rows = []
    for idx, m in enumerate(inst.matrices):
        if len(m) != size or any(len(row) != size for row in m):
            raise ParseError(f"Matrix {idx + 1} is not {size}x{size}")
        rows.append([[parse_rational(v, approx) for v in row] for row in m])
    return rows, parse_vector(inst.w, size, approx), parse_vector(inst.y, size, approx)


def maxplus_matrices(inst: InstanceFile, approx: bool = False) -> List[MaxPlusMatrix2]:
    return [MaxPlusMatrix2.from_dict(item, approx) for item in inst.maxplus]


def flowshop_jobs(inst: InstanceFile, approx: bool = False) -> List[Tuple[Fraction, Fraction]]:
    try:
        return [(parse_rational(job["p1"], approx), parse_rational(job["p2"], approx)) for job in inst.jobs]
    except KeyError as e:
        raise ParseError(f"Flow-shop job is missing {e}")


# ============================================================
# 🚀 Solve
# ============================================================
def _result(sigma: Sequence[int], value, **extra) -> Dict[str, Any]:
    out = {"permutation": one_based(sigma), "value": value if isinstance(value, str) else format_rational(value)}
    out.update({key: val for key, val in extra.items() if val is not None})
    return out


def solve(inst: InstanceFile, oracle: bool = False, cap: Optional[int] = None, approx: bool = False) -> Dict[str, Any]:
    result = _solve(inst, oracle, cap, approx)
    if approx:
        result["approx"] = True
    return result


def _solve(inst: InstanceFile, oracle: bool, cap: Optional[int], approx: bool) -> Dict[str, Any]:
    kind = inst.kind

    if kind == "linear":
        fs = linear_functions(inst, approx)
        c = parse_rational(inst.c, approx)
        k = sum(1 for f in fs if f.is_decreasing)
        if inst.target is not None:
            report = brute_target(fs, c, parse_rational(inst.target, approx), cap)
            sigma = report.all_optimal_permutations[0]
            return _result(
                sigma, report.best_composite.evaluate(c), composite=report.best_composite.to_dict(),
                case="target", k=k, source="oracle", gap=format_rational(report.best_value),
                optima_count=len(report.all_optimal_permutations),
            )
        if oracle:
            report = brute_min_composition(fs, c, inst.sense, cap)
            return _result(
                report.all_optimal_permutations[0], report.best_value, composite=report.best_composite.to_dict(),
                case="oracle", k=k, source="oracle", optima_count=len(report.all_optimal_permutations),
            )
        solver = solve_general_max if inst.sense == "max" else solve_general_min
        res = solver(fs, c)
        return _result(res.sigma, res.value, composite=res.composite.to_dict(), case=res.case_tag.value, k=res.k)

    if kind == "matrix2":
        ms, w, y = matrices_2x2(inst, approx)
        if oracle:
            report = brute_min_matrix(ms, w, y, inst.sense, cap)
            return _result(
                report.all_optimal_permutations[0], report.best_value, case="oracle", source="oracle",
                optima_count=len(report.all_optimal_permutations),
            )
        res = solve_matrix2(ms, w, y, inst.sense)
        case = res.case_tag.value if res.case_tag is not None else "degenerate"
        return _result(res.sigma, res.value, case=case, k=res.k, transform=res.transform.to_list())

    if kind == "matrixN":
        if not oracle:
            raise UnsupportedInstanceError(
                "Matrices larger than 2x2 are only served by the brute-force oracle (use --oracle)",
                code="oracle-required",
            )
        rows, w, y = matrices_square(inst, approx)
        report = brute_min_matrix(rows, w, y, inst.sense, cap)
        return _result(
            report.all_optimal_permutations[0], report.best_value, case="oracle", source="oracle",
            optima_count=len(report.all_optimal_permutations),
        )

    if inst.sense == "max":
        raise UnsupportedInstanceError(f"Kind '{kind}' supports minimization only", code="unsupported-sense")

    if kind == "maxplus2":
        ns = maxplus_matrices(inst, approx)
        if oracle:
            report = brute_min_maxplus(ns, cap)
            return _result(
                report.all_optimal_permutations[0], str(report.best_value), case="oracle", source="oracle",
                optima_count=len(report.all_optimal_permutations),
            )
        res = solve_maxplus_min(ns)
        return _result(res.sigma, str(res.value), case="kappa_star")

    jobs = flowshop_jobs(inst, approx)
    ns = flowshop_to_maxplus(jobs)
    if oracle:
        report = brute_min_maxplus(ns, cap)
        return _result(
            report.all_optimal_permutations[0], str(report.best_value), case="oracle", source="oracle",
            optima_count=len(report.all_optimal_permutations),
        )
    res = solve_maxplus_min(ns)
    return _result(
        res.sigma, flowshop_makespan(jobs, res.sigma), case="kappa_star", johnson=one_based(johnson_rule(jobs))
    )


# ============================================================
# ✅ Verify
# ============================================================
def verify(inst: InstanceFile, sigma: Optional[Sequence[int]] = None, cap: Optional[int] = None) -> Dict[str, Any]:
    """Solver vs oracle, plus the angle certificate for nondecreasing linear instances."""
    kind = inst.kind
    solver_value, solver_sigma, certificate = None, None, None
    mismatches: List[str] = []

    if kind == "linear":
        fs = linear_functions(inst)
        c = parse_rational(inst.c)
        n = len(fs)

        def objective(s):
            return compose_seq(fs, s).evaluate(c)

        if inst.target is None:
            report = brute_min_composition(fs, c, inst.sense, cap)
            solved = (solve_general_max if inst.sense == "max" else solve_general_min)(fs, c)
            solver_value, solver_sigma = solved.value, solved.sigma
        else:
            target = parse_rational(inst.target)
            report = brute_target(fs, c, target, cap)

            def objective(s):
                return abs(compose_seq(fs, s).evaluate(c) - target)

    elif kind in ("matrix2", "matrixN"):
        if kind == "matrix2":
            ms, w, y = matrices_2x2(inst)
        else:
            ms, w, y = matrices_square(inst)
        n = len(ms)
        report = brute_min_matrix(ms, w, y, inst.sense, cap)
        if kind == "matrix2":
            solved = solve_matrix2(ms, w, y, inst.sense)
            solver_value, solver_sigma = solved.value, solved.sigma

        def objective(s):
            return matrix_objective(ms, w, y, s)

    else:
        if inst.sense == "max":
            raise UnsupportedInstanceError(f"Kind '{kind}' supports minimization only", code="unsupported-sense")
        jobs = flowshop_jobs(inst) if kind == "flowshop" else None
        ns = maxplus_matrices(inst) if jobs is None else flowshop_to_maxplus(jobs)
        n = len(ns)
        report = brute_min_maxplus(ns, cap)
        solved = solve_maxplus_min(ns)
        solver_value, solver_sigma = solved.value, solved.sigma
        if jobs is not None and mp_objective(ns, johnson_rule(jobs)) != solved.value:
            mismatches.append("Johnson's rule and the kappa* order disagree")

        def objective(s):
            return mp_objective(ns, s)

    best = report.best_value
    if solver_value is not None and solver_value != best:
        mismatches.append(f"solver value {_fmt(solver_value)} differs from oracle value {_fmt(best)}")

    checked = zero_based(sigma, n) if sigma is not None else solver_sigma
    sigma_value = objective(checked) if sigma is not None else None
    if sigma_value is not None and sigma_value != best:
        mismatches.append(f"permutation {list(sigma)} reaches {_fmt(sigma_value)}, optimum is {_fmt(best)}")

    if kind == "linear" and inst.target is None and checked is not None and all(f.slope >= 0 for f in fs):
        subject = [f.tilde() for f in fs] if inst.sense == "max" else fs
        certificate = is_optimal_certificate(subject, checked, c)
        optimal = objective(checked) == best
        if certificate != optimal:
            mismatches.append(f"certificate says {certificate} but the permutation is {'' if optimal else 'not '}optimal")

    if mismatches:
        logger.warning(f"⚠️ Verification found {len(mismatches)} mismatch(es)")
    return {
        "ok": not mismatches,
        "solver_value": _fmt(solver_value) if solver_value is not None else None,
        "oracle_value": _fmt(best),
        "sigma_value": _fmt(sigma_value) if sigma_value is not None else None,
        "certificate": certificate,
        "evaluated_count": report.evaluated_count,
        "mismatches": mismatches,
    }


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


# ============================================================
# 🔢 Count / Enumerate
# ============================================================
def _monotone_functions(inst: InstanceFile) -> List[LinearFunction]:
    if inst.kind != "linear":
        raise UnsupportedInstanceError("Counting is only defined for linear instances", code="counting-unsupported")
    fs = linear_functions(inst)
    return [f.tilde() for f in fs] if inst.sense == "max" else fs


def count(inst: InstanceFile) -> Dict[str, int]:
    return {"count": count_optimal(_monotone_functions(inst))}


def enumerate_permutations(inst: InstanceFile, limit: Optional[int] = None) -> Dict[str, Any]:
    limit = limit or utils.ENUMERATE_LIMIT
    found = list(enumerate_optimal(_monotone_functions(inst), limit + 1))
    return {
        "permutations": [one_based(sigma) for sigma in found[:limit]],
        "limit": limit,
        "truncated": len(found) > limit,
    }


# ============================================================
# 🎲 Random Corpora and Benchmarks
# ============================================================
POSITIVE_SLOPES = [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)]
NEGATIVE_SLOPES = [-s for s in POSITIVE_SLOPES]


def random_linear_functions(rng: random.Random, n: int, k: int = 0, constants: int = 0) -> List[LinearFunction]:
    """n functions: k decreasing, ``constants`` constant, the rest increasing; shuffled."""
    if k + constants > n:
        raise ParseError(f"Cannot place {k} decreasing and {constants} constant functions among {n}")
    slopes = (
        [rng.choice(NEGATIVE_SLOPES) for _ in range(k)]
        + [Fraction(0)] * constants
        + [rng.choice(POSITIVE_SLOPES) for _ in range(n - k - constants)]
    )
    rng.shuffle(slopes)
    return [LinearFunction(a, rng.randint(-4, 4)) for a in slopes]


def _verify_trial(args: Tuple[int, int, int, Optional[int]]) -> Optional[str]:
    n, k, seed, cap = args
    fs = random_linear_functions(random.Random(seed), n, k)
    solved = solve_general_min(fs)
    report = brute_min_composition(fs, 0, "min", cap)
    if solved.value != report.best_value:
        return f"seed {seed}: solver {format_rational(solved.value)} vs oracle {format_rational(report.best_value)}"
    return None


def verify_random(n: int, k: int, trials: int, seed: int, cap: Optional[int] = None, jobs: int = 1) -> Dict[str, Any]:
    tasks = [(n, k, seed + t, cap) for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_verify_trial, tasks))
    else:
        outcomes = [_verify_trial(task) for task in tasks]
    mismatches = [msg for msg in outcomes if msg]
    logger.info(f"✅ Random verification: {trials - len(mismatches)}/{trials} trials agree (n={n}, k={k})")
    return {"ok": not mismatches, "n": n, "k": k, "seed": seed, "trials": trials, "mismatches": mismatches}


def bench_dp(n: int, ks: Sequence[int], trials: int, seed: int) -> List[Dict[str, Any]]:
    """Median time of one LU-ordered DP per k at fixed n; monotone functions split evenly into L and U."""
    rows = []
    for k in ks:
        if not 0 < k <= n:
            raise ParseError(f"k must be in 1..{n}, got {k}")
        rng = random.Random(seed + k)
        timings = []
        for _ in range(trials):
            mono = random_linear_functions(rng, n - k)
            dec = random_linear_functions(rng, k, k)
            lower, upper = mono[: len(mono) // 2], mono[len(mono) // 2:]
            start = time.perf_counter()
            lu_ordered_optimal(lower, upper, dec)
            timings.append(time.perf_counter() - start)
        rows.append({
            "n": n,
            "k": k,
            "median_seconds": statistics.median(timings),
            "table_size": (len(lower) + 1) * (len(upper) + 1) * 2 ** k,
        })
        logger.debug("bench n=%d k=%d median=%.6fs", n, k, rows[-1]["median_seconds"])
    return rows
