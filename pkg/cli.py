"""
Command-line surface.

    python cli.py solve fixtures/intro.json --sense max
    python cli.py verify fixtures/example3.json --sigma 1,2,3,4,5,6,7
    python cli.py verify --random 6 2 50 --seed 7 --jobs 4
    python cli.py count fixtures/colinear.json
    python cli.py enumerate fixtures/colinear.json --limit 10
    python cli.py bench --n 40 --k 4 --trials 5

Results go to stdout as sorted JSON; diagnostics go to stderr. Exit status:
0 ok, 1 verification mismatch, 2 parse error, 3 unsupported instance,
4 oracle cap exceeded.
"""

import argparse
import logging
import sys
from typing import List, Optional

import solver_service
import utils
from errors import ParseError, SolverError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1

APPROX_BANNER = (
    "⚠️ --approx: float literals were read as their exact binary values; "
    "results are approximate and no certificates are emitted"
)


def _sigma(text: str) -> List[int]:
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected comma-separated 1-based indices, got '{text}'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="compose-order", description="Optimal composition orderings")
    parser.add_argument("--log-level", default=None, help="DEBUG or INFO (default from LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--sense", choices=("min", "max"), help="Override the file's sense")
        p.add_argument("--c", dest="c", help="Override the evaluation point (linear)")
        p.add_argument("--cap", type=int, help="Brute-force cap override")

    p_solve = sub.add_parser("solve", help="Solve an instance file")
    p_solve.add_argument("path")
    instance_flags(p_solve)
    p_solve.add_argument("--target", help="Minimize |f(c) - target| with the oracle")
    p_solve.add_argument("--oracle", action="store_true", help="Use exhaustive search")
    p_solve.add_argument("--approx", action="store_true", help="Accept float literals")

    p_verify = sub.add_parser("verify", help="Check the solver against the oracle")
    p_verify.add_argument("path", nargs="?")
    instance_flags(p_verify)
    p_verify.add_argument("--sigma", type=_sigma, help="1-based permutation to check, e.g. 2,1,3")
    p_verify.add_argument("--random", nargs=3, type=int, metavar=("N", "K", "TRIALS"))
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--jobs", type=int, default=1)

    p_count = sub.add_parser("count", help="Count optimal permutations (monotone linear)")
    p_count.add_argument("path")
    p_count.add_argument("--sense", choices=("min", "max"))

    p_enum = sub.add_parser("enumerate", help="List optimal permutations (monotone linear)")
    p_enum.add_argument("path")
    p_enum.add_argument("--sense", choices=("min", "max"))
    p_enum.add_argument("--limit", type=int, default=None)

    p_bench = sub.add_parser("bench", help="Time the LU-ordered DP for k = 1..K at fixed n")
    p_bench.add_argument("--n", type=int, default=20)
    p_bench.add_argument("--k", type=int, default=4)
    p_bench.add_argument("--trials", type=int, default=None)
    p_bench.add_argument("--seed", type=int, default=0)
    return parser


def _load(args: argparse.Namespace):
    inst = solver_service.read_instance(args.path)
    overrides = {}
    for name in ("sense", "c", "target"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if overrides:
        inst = solver_service.parse_instance({**inst.model_dump(exclude_none=True), **overrides})
    return inst


# ============================================================
# 🧭 Commands
# ============================================================
def cmd_solve(args: argparse.Namespace) -> int:
    inst = _load(args)
    if args.approx:
        logger.warning(APPROX_BANNER)
    result = solver_service.solve(inst, oracle=args.oracle, cap=args.cap, approx=args.approx)
    print(utils.dump_json(result))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.random is not None:
        n, k, trials = args.random
        report = solver_service.verify_random(n, k, trials, args.seed, cap=args.cap, jobs=args.jobs)
    elif args.path:
        report = solver_service.verify(_load(args), sigma=args.sigma, cap=args.cap)
    else:
        raise ParseError("verify needs an instance path or --random N K TRIALS")
    print(utils.dump_json(report))
    return EXIT_OK if report["ok"] else EXIT_MISMATCH


def cmd_count(args: argparse.Namespace) -> int:
    print(utils.dump_json(solver_service.count(_load(args))))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    print(utils.dump_json(solver_service.enumerate_permutations(_load(args), args.limit)))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    trials = args.trials or utils.BENCH_TRIALS
    rows = solver_service.bench_dp(args.n, range(1, args.k + 1), trials, args.seed)
    print(utils.dump_json({"trials": trials, "seed": args.seed, "rows": rows}))
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "bench": cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = None
    if args.log_level:
        level = logging.DEBUG if args.log_level.upper() == "DEBUG" else logging.INFO
    utils.configure_logging(level)

    try:
        return COMMANDS[args.command](args)
    except SolverError as e:
        logger.error(f"❌ {e.code}: {e.message}")
        return e.exit_code
    except Exception as e:
        logger.error(f"❌ Unexpected error: {e}", exc_info=True)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
