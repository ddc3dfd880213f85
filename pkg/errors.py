"""Exception hierarchy shared by the solvers, the CLI and the HTTP layer.

Every failure carries a stable string ``code`` (surfaced in JSON error bodies)
and an ``exit_code`` the CLI hands back to the shell.
"""

from typing import Optional


class SolverError(ValueError):
    exit_code = 1
    http_status = 400
    default_code = "solver-error"

    def __init__(self, message: str, code: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.code = code or self.default_code

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message}


class ParseError(SolverError):
    """Instance file or literal could not be read."""
    exit_code = 2
    http_status = 400
    default_code = "parse-error"


class LengthMismatchError(ParseError):
    default_code = "length-mismatch"


class UnsupportedInstanceError(SolverError):
    """The instance is valid but outside what the exact solvers handle."""
    exit_code = 3
    http_status = 422
    default_code = "unsupported"


class InternalSolverError(SolverError):
    """Two exact computations that must agree did not."""
    exit_code = 1
    http_status = 500
    default_code = "internal-inconsistency"


class CapExceededError(SolverError):
    """Brute-force oracle refused an instance larger than its cap."""
    exit_code = 4
    http_status = 413
    default_code = "cap-exceeded"
