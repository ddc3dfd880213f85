from fastapi import APIRouter, HTTPException, status
import asyncio
import logging

import solver_service
from errors import SolverError
from models import CountResponse, EnumerateResponse, SolveResponse, VerifyResponse
from schemas import EnumerateRequest, InstanceFile, SolveRequest, VerifyRequest

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/solver", tags=["Solver"])

REQUEST_ONLY_FIELDS = {"oracle", "cap", "approx", "sigma", "limit"}


def _instance(body: InstanceFile) -> InstanceFile:
    return InstanceFile(**body.model_dump(exclude=REQUEST_ONLY_FIELDS))


async def _run(func, *args):
    """Run a solver call off the event loop and map SolverError onto HTTP."""
    try:
        return await asyncio.to_thread(func, *args)
    except SolverError as e:
        logger.info(f"Solver rejected request: {e.code} ({e.message})")
        raise HTTPException(status_code=e.http_status, detail=e.to_dict())
    except Exception as e:
        logger.error(f"❌ Unexpected solver failure: {e}", exc_info=True)
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail="Solver failed")


# ============================================================
# 🚀 Solve / Verify
# ============================================================
@router.post("/solve", response_model=SolveResponse, response_model_exclude_none=True)
async def solve_instance(body: SolveRequest):
    """Optimal ordering for the instance; `oracle` forces exhaustive search."""
    return await _run(solver_service.solve, _instance(body), body.oracle, body.cap, body.approx)


@router.post("/verify", response_model=VerifyResponse)
async def verify_instance(body: VerifyRequest):
    """Compare the solver (and an optional 1-based `sigma`) with the brute-force oracle."""
    return await _run(solver_service.verify, _instance(body), body.sigma, body.cap)


# ============================================================
# 🔢 Count / Enumerate
# ============================================================
@router.post("/count", response_model=CountResponse)
async def count_optima(body: InstanceFile):
    return await _run(solver_service.count, body)


@router.post("/enumerate", response_model=EnumerateResponse)
async def enumerate_optima(body: EnumerateRequest):
    return await _run(solver_service.enumerate_permutations, _instance(body), body.limit)
