from typing import Any, Optional

from pydantic import BaseModel

from app.core.config import settings
from app.schemas.report_schemas import ReportEnvelope
from app.utils.graph_io import digest


class ReportService:
    """Service for wrapping command results in the shared envelope."""

    @staticmethod
    def envelope(command: str, result: Any, source: Optional[str] = None) -> ReportEnvelope:
        if isinstance(result, BaseModel):
            result = result.model_dump(mode="json")
        elif isinstance(result, list):
            result = [r.model_dump(mode="json") if isinstance(r, BaseModel) else r for r in result]
        return ReportEnvelope(
            command=command,
            input_digest=None if source is None else digest(source),
            tool_version=settings.TOOL_VERSION,
            result=result,
        )

    @staticmethod
    def render(envelope: ReportEnvelope) -> str:
        return envelope.model_dump_json(indent=2)
