from app.core.config import settings


def health_check():
    return {"status": "ok", "tool_version": settings.TOOL_VERSION}
