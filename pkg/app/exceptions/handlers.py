from fastapi import Request
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from app.exceptions.errors import ApplicationException
from app.core.logger import get_logger

logger = get_logger("handlers")


async def application_exception_handler(request: Request, exc: ApplicationException):
    logger.warning(f"{request.method} {request.url.path} -> {exc.status_code}: {exc.message}")
    return exc.to_response()


async def http_exception_handler(request: Request, exc: StarletteHTTPException):
    return JSONResponse(status_code=exc.status_code, content={"error": exc.detail})


async def generic_exception_handler(request: Request, exc: Exception):
    logger.exception(f"Unhandled error on {request.method} {request.url.path}: {exc!r}")
    return JSONResponse(status_code=500, content={"error": "unexpected server error"})
