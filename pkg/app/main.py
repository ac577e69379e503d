import uvicorn
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from contextlib import asynccontextmanager
from fastapi.responses import JSONResponse
from app.exceptions.handlers import (
    application_exception_handler,
    http_exception_handler,
    generic_exception_handler
)
from app.exceptions.errors import ApplicationException
from starlette.exceptions import HTTPException as StarletteHTTPException
from fastapi.exceptions import RequestValidationError

from app.api.v1.routes import health_router, graph_router, bounds_router, family_router
from app.core.config import settings
from app.services.bounds_service import BoundsService
from app.enums import GraphClass

from app.core.logger import get_logger

logger = get_logger("forestbound-api")


@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info("API is starting...")
    # CatalogError here aborts startup
    for graph_class in GraphClass:
        BoundsService.polygon(graph_class)
    yield
    logger.info("API is shutting down...")


swagger_ui_parameters = {
    "deepLinking": True,
    "displayRequestDuration": True,
    "tryItOutEnabled": settings.IS_DEVELOPMENT,
}

app = FastAPI(
    title="Forest Bounds API",
    version=settings.TOOL_VERSION,
    lifespan=lifespan,
    description="""
    Induced forests in triangle-free and girth-5 planar graphs.

    Graph-bearing endpoints take the graph file text in a JSON body
    (`{"graph": "p forest 4 4\\ne 1 2\\n..."}`); every response is a report envelope.
    """,
    swagger_ui_parameters=swagger_ui_parameters,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["http://localhost:3000", "http://127.0.0.1:3000"],
    allow_methods=["GET", "POST"],
    allow_headers=["*"],
)

app.include_router(health_router, prefix="/api/v1")
app.include_router(graph_router, prefix="/api/v1")
app.include_router(bounds_router, prefix="/api/v1")
app.include_router(family_router, prefix="/api/v1")


@app.get("/", include_in_schema=False)
async def root():
    return {
        "message": "Forest Bounds API",
        "docs": "/docs",
        "development_mode": settings.IS_DEVELOPMENT,
        "version": settings.TOOL_VERSION,
    }


@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    logger.warning(f"Validation error on {request.method} {request.url.path}: {exc.errors()}")
    errors = [
        {
            "type": error.get("type"),
            "loc": error.get("loc"),
            "msg": error.get("msg"),
        }
        for error in exc.errors()
    ]
    return JSONResponse(status_code=422, content={"error": "invalid request", "detail": errors})


app.add_exception_handler(ApplicationException, application_exception_handler)
app.add_exception_handler(StarletteHTTPException, http_exception_handler)
app.add_exception_handler(Exception, generic_exception_handler)

if __name__ == "__main__":
    uvicorn.run(
        "app.main:app",
        host="127.0.0.1",
        port=8000,
        reload=settings.IS_DEVELOPMENT,
        timeout_keep_alive=30,
    )
