from fastapi import APIRouter, Depends, HTTPException, status
from starlette.requests import HTTPConnection
from datetime import datetime
import logging
import time
from collections import defaultdict, deque
from typing import Deque, Dict, Sequence

import utils
from solver_routes import router as solver_router
from app_config_routes import router as app_config_router

logger = logging.getLogger(__name__)

# ============================================================
# 🛡️ Rate Limiter Dependency
# ============================================================
def _client_key(conn: HTTPConnection) -> str:
    forwarded = conn.headers.get("X-Forwarded-For")
    if forwarded:
        return forwarded.split(",")[0].strip()
    real_ip = conn.headers.get("X-Real-IP")
    if real_ip:
        return real_ip.strip()
    return conn.client.host if conn.client else "unknown"


class RateLimiter:
    """
    In-memory sliding-window limiter keyed by client IP. The oracle endpoints
    can burn n! evaluations per request, so the solver routes sit behind it.
    """
    def __init__(self, requests_limit: int, time_window: int, exempt_prefixes: Sequence[str] = ()):
        self.requests_limit = requests_limit
        self.time_window = time_window
        self.exempt_prefixes = tuple(p.rstrip("/").lower() for p in exempt_prefixes)
        self.hits: Dict[str, Deque[float]] = defaultdict(deque)

    def is_exempt(self, path: str) -> bool:
        path = (path.rstrip("/") or "/").lower()
        return path == "/" or any(path.startswith(p) for p in self.exempt_prefixes)

    def reset(self) -> None:
        self.hits.clear()

    async def __call__(self, conn: HTTPConnection):
        if self.is_exempt(conn.url.path):
            return

        key = _client_key(conn)
        window = self.hits[key]
        now = time.monotonic()
        while window and now - window[0] >= self.time_window:
            window.popleft()

        if len(window) >= self.requests_limit:
            retry_after = max(1, int(self.time_window - (now - window[0])))
            logger.warning(f"⛔ Rate limit hit for {key} ({len(window)} requests in {self.time_window}s)")
            raise HTTPException(
                status_code=status.HTTP_429_TOO_MANY_REQUESTS,
                detail={"code": "rate-limited", "message": f"at most {self.requests_limit} solver requests per {self.time_window}s"},
                headers={"Retry-After": str(retry_after)},
            )

        window.append(now)


limiter = RateLimiter(
    requests_limit=utils.RATE_LIMIT_REQUESTS,
    time_window=utils.RATE_LIMIT_WINDOW,
    exempt_prefixes=["/health", "/docs", "/redoc", "/openapi.json", "/app/config"],
)

api_gateway = APIRouter(dependencies=[Depends(limiter)])

# ============================================================
# 🔗 Route Aggregation
# ============================================================
api_gateway.include_router(solver_router)
api_gateway.include_router(app_config_router)


# ============================================================
# 🏥 Common Gateway Endpoints (Health, Root)
# ============================================================
@api_gateway.get("/", tags=["Root"])
async def root():
    """Root endpoint with API information."""
    return {
        "message": f"{utils.APP_NAME} API",
        "version": utils.APP_VERSION,
        "docs": "/docs",
        "health": "/health",
    }


@api_gateway.get("/health", tags=["Health"])
async def health_check():
    """Health check endpoint for monitoring and load balancers."""
    return {
        "status": "healthy",
        "timestamp": datetime.utcnow().isoformat(),
        "oracle_caps": {"linear": utils.ORACLE_CAP_LINEAR, "matrix": utils.ORACLE_CAP_MATRIX},
        "enumerate_limit": utils.ENUMERATE_LIMIT,
    }
