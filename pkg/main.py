from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
import logging
from contextlib import asynccontextmanager

import utils
from api_gateway import api_gateway

# Configure logging
utils.configure_logging()
logger = logging.getLogger(__name__)


# ============================================================
# 🔄 Lifespan Context Manager
# ============================================================
@asynccontextmanager
async def lifespan(app: FastAPI):
    """Manage application lifespan events."""
    logger.info(f"🚀 Starting {utils.APP_NAME}...")
    logger.info(
        f"✅ Oracle caps: linear n<={utils.ORACLE_CAP_LINEAR}, matrix n<={utils.ORACLE_CAP_MATRIX}; "
        f"enumerate limit {utils.ENUMERATE_LIMIT}"
    )
    if utils.ENVIRONMENT.lower() != "development":
        logger.info("ℹ️ API docs disabled outside development")

    yield

    logger.info(f"🛑 Shutting down {utils.APP_NAME}...")


# ============================================================
# 🚀 FastAPI Application
# ============================================================
_docs_enabled = utils.ENVIRONMENT.lower() == "development"

app = FastAPI(
    title=f"{utils.APP_NAME} API",
    version=utils.APP_VERSION,
    description="Exact optimal composition orderings of linear functions, 2x2 matrices and max-plus matrices.",
    docs_url="/docs" if _docs_enabled else None,
    redoc_url="/redoc" if _docs_enabled else None,
    lifespan=lifespan,
)

raw_origins = utils.ALLOWED_ORIGINS
allowed_origins = [origin.strip() for origin in raw_origins.split(",")] if raw_origins != "*" else ["*"]
app.add_middleware(
    CORSMiddleware,
    allow_origins=allowed_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(api_gateway)


if __name__ == "__main__":
    import uvicorn
    uvicorn.run("main:app", host=utils.API_HOST, port=utils.API_PORT, reload=utils.ENVIRONMENT.lower() == "development")
