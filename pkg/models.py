from pydantic import BaseModel, Field
from typing import List, Optional


# -------------------------------
# Solve Models
# -------------------------------
class FunctionOut(BaseModel):
    a: str
    b: str


class SolveResponse(BaseModel):
    permutation: List[int] = Field(..., description="1-based indices in application order")
    value: str = Field(..., description="Exact objective as 'p/q'")
    composite: Optional[FunctionOut] = None
    case: Optional[str] = None
    k: int = 0
    source: str = "solver"
    optima_count: Optional[int] = None
    gap: Optional[str] = None
    transform: Optional[List[List[str]]] = None
    johnson: Optional[List[int]] = None
    approx: bool = False


# -------------------------------
# Verify Models
# -------------------------------
class VerifyResponse(BaseModel):
    ok: bool
    solver_value: Optional[str] = None
    oracle_value: str
    sigma_value: Optional[str] = None
    certificate: Optional[bool] = None
    evaluated_count: int
    mismatches: List[str] = Field(default_factory=list)


# -------------------------------
# Counting Models
# -------------------------------
class CountResponse(BaseModel):
    count: int


class EnumerateResponse(BaseModel):
    permutations: List[List[int]]
    limit: int
    truncated: bool


# -------------------------------
# Service Models
# -------------------------------
class ServiceConfig(BaseModel):
    app_name: str
    version: str
    kinds: List[str]
    oracle_cap_linear: int
    oracle_cap_matrix: int
    enumerate_limit: int
    rate_limit_requests: int
    rate_limit_window: int
