"""Public solver configuration for clients (limits and supported instance kinds)."""

from fastapi import APIRouter

import utils
from models import ServiceConfig
from schemas import INSTANCE_KINDS

router = APIRouter(prefix="/app", tags=["App configuration"])


@router.get("/config", response_model=ServiceConfig)
async def get_public_app_config():
    """
    Read-only settings so clients can size requests before sending them:
    brute-force caps, the enumeration limit and the HTTP rate limit.
    """
    return ServiceConfig(
        app_name=utils.APP_NAME,
        version=utils.APP_VERSION,
        kinds=list(INSTANCE_KINDS),
        oracle_cap_linear=utils.ORACLE_CAP_LINEAR,
        oracle_cap_matrix=utils.ORACLE_CAP_MATRIX,
        enumerate_limit=utils.ENUMERATE_LIMIT,
        rate_limit_requests=utils.RATE_LIMIT_REQUESTS,
        rate_limit_window=utils.RATE_LIMIT_WINDOW,
    )
