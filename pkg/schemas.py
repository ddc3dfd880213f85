from pydantic import BaseModel, Field, root_validator, validator
from typing import Any, Dict, List, Optional


INSTANCE_KINDS = ("linear", "matrix2", "matrixN", "maxplus2", "flowshop")

PAYLOAD_FIELDS = {
    "linear": ("functions",),
    "matrix2": ("matrices", "w", "y"),
    "matrixN": ("matrices", "w", "y"),
    "maxplus2": ("maxplus",),
    "flowshop": ("jobs",),
}
ALL_PAYLOAD_FIELDS = {name for names in PAYLOAD_FIELDS.values() for name in names}


# ===============================
# 📄 Instance File Schema
# ===============================
class InstanceFile(BaseModel):
    """
    One problem instance. Numbers stay raw (ints or "p/q" strings) until the
    solver layer reads them as exact rationals.
    """

    kind: str
    functions: Optional[List[Dict[str, Any]]] = None
    matrices: Optional[List[List[List[Any]]]] = None
    w: Optional[List[Any]] = None
    y: Optional[List[Any]] = None
    maxplus: Optional[List[Dict[str, Any]]] = None
    jobs: Optional[List[Dict[str, Any]]] = None
    c: Any = 0
    sense: str = "min"
    target: Optional[Any] = None

    class Config:
        extra = "forbid"

    @validator("kind")
    def kind_supported(cls, v):
        if v not in INSTANCE_KINDS:
            raise ValueError(f"kind must be one of {', '.join(INSTANCE_KINDS)}")
        return v

    @validator("sense")
    def sense_supported(cls, v):
        if v not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        return v

    @root_validator(skip_on_failure=True)
    def payload_matches_kind(cls, values):
        kind = values.get("kind")
        for name in PAYLOAD_FIELDS[kind]:
            if values.get(name) is None:
                raise ValueError(f"kind '{kind}' requires '{name}'")
        for name in ALL_PAYLOAD_FIELDS - set(PAYLOAD_FIELDS[kind]):
            if values.get(name) is not None:
                raise ValueError(f"'{name}' is not allowed for kind '{kind}'")
        if values.get("target") is not None and kind != "linear":
            raise ValueError("target is only supported for linear instances")
        return values


# ===============================
# 🧮 Solver Requests
# ===============================
class SolveRequest(InstanceFile):
    oracle: bool = False
    cap: Optional[int] = Field(None, gt=0, le=12)
    approx: bool = False


class VerifyRequest(InstanceFile):
    sigma: Optional[List[int]] = Field(None, description="1-based permutation to check")
    cap: Optional[int] = Field(None, gt=0, le=12)

    @validator("sigma")
    def sigma_one_based(cls, v):
        if v is not None and any(i < 1 for i in v):
            raise ValueError("Permutation entries are 1-based")
        return v


class EnumerateRequest(InstanceFile):
    limit: Optional[int] = Field(None, gt=0)
