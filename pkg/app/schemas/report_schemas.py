"""
Report envelope and request bodies
"""
from pydantic import BaseModel, Field
from typing import Any, Optional

from app.enums import GraphClass, TieBreak
from app.schemas.reduction_schemas import ForestCertificate


class ReportEnvelope(BaseModel):
    """Machine-readable result document shared by every command"""
    command: str
    input_digest: Optional[str] = None
    tool_version: str
    result: Any


class GraphRequest(BaseModel):
    """Request carrying a graph file"""
    graph: str


class ExactRequest(GraphRequest):
    limit_s: Optional[float] = Field(default=None, gt=0)
    node_limit: Optional[int] = Field(default=None, gt=0)
    jobs: Optional[int] = Field(default=None, gt=0)
    tie_break: TieBreak = TieBreak.LEXICOGRAPHIC


class ReduceRequest(GraphRequest):
    graph_class: GraphClass
    threshold: Optional[int] = Field(default=None, ge=0)


class VerifyRequest(GraphRequest):
    certificate: ForestCertificate


class AuditRequest(GraphRequest):
    mode: GraphClass
