import os
import json
import logging
from fractions import Fraction
from numbers import Rational
from typing import Any, Iterable, List, Sequence

from dotenv import load_dotenv

from errors import ParseError

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)

# ============================================================
# ⚙️ Constants
# ============================================================
APP_NAME = os.getenv("APP_NAME", "Composition Ordering Solver")
APP_VERSION = "1.0.0"
ENVIRONMENT = os.getenv("ENVIRONMENT", "development")
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
ALLOWED_ORIGINS = os.getenv("ALLOWED_ORIGINS", "*")
API_HOST = os.getenv("API_HOST", "0.0.0.0")
API_PORT = int(os.getenv("API_PORT", "8000"))

# Brute-force oracle caps (n! permutations are enumerated)
ORACLE_CAP_LINEAR = int(os.getenv("ORACLE_CAP_LINEAR", "9"))
ORACLE_CAP_MATRIX = int(os.getenv("ORACLE_CAP_MATRIX", "8"))

ENUMERATE_LIMIT = int(os.getenv("ENUMERATE_LIMIT", "1000"))
BENCH_TRIALS = int(os.getenv("BENCH_TRIALS", "5"))

# Sliding-window limit on the HTTP solver endpoints, per client IP
RATE_LIMIT_REQUESTS = int(os.getenv("RATE_LIMIT_REQUESTS", "120"))
RATE_LIMIT_WINDOW = int(os.getenv("RATE_LIMIT_WINDOW", "60"))


def log_level() -> int:
    return logging.DEBUG if LOG_LEVEL.upper() == "DEBUG" else logging.INFO


def configure_logging(level: int = None) -> None:
    logging.basicConfig(
        level=level if level is not None else log_level(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )


# ============================================================
# 🔢 Rational Helpers
# ============================================================
def parse_rational(value: Any, approx: bool = False) -> Fraction:
    """
    Read a rational from JSON: bare integers or strings "p/q", "-3", "1.25".
    Floats are rejected unless ``approx`` is set, in which case their binary
    value is taken exactly.
    """
    if isinstance(value, bool):
        raise ParseError(f"Boolean is not a number: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if not approx:
            raise ParseError(f"Float literal {value!r} is not exact; quote it as a string or use --approx")
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            if approx:
                try:
                    return Fraction(float(text))
                except (ValueError, OverflowError):
                    pass
            raise ParseError(f"Invalid rational literal: {value!r}")
    raise ParseError(f"Unsupported rational value: {value!r}")


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def parse_vector(values: Sequence[Any], size: int = 2, approx: bool = False) -> List[Fraction]:
    if len(values) != size:
        raise ParseError(f"Expected a vector of length {size}, got {len(values)}")
    return [parse_rational(v, approx) for v in values]


def one_based(sigma: Iterable[int]) -> List[int]:
    return [i + 1 for i in sigma]


def zero_based(sigma: Iterable[int], n: int) -> List[int]:
    out = [int(i) - 1 for i in sigma]
    if sorted(out) != list(range(n)):
        raise ParseError(f"Not a permutation of 1..{n}: {list(sigma)}")
    return out


def dump_json(payload: Any) -> str:
    """Stable JSON rendering used on stdout."""
    return json.dumps(payload, sort_keys=True, indent=2)
