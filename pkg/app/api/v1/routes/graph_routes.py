from fastapi import APIRouter

from app.api.v1.controllers.graph_controller import GraphController
from app.schemas.report_schemas import AuditRequest, ExactRequest, GraphRequest, ReduceRequest, ReportEnvelope, VerifyRequest

router = APIRouter(prefix="/graphs", tags=["Graphs"])


@router.post("/info", response_model=ReportEnvelope)
def graph_info(body: GraphRequest):
    """Size, girth, degree counts and faces of a graph file."""
    return GraphController.info(body)


@router.post("/exact", response_model=ReportEnvelope)
def exact_forest(body: ExactRequest):
    """Exact forest number with a witness forest."""
    return GraphController.exact(body)


@router.post("/reduce", response_model=ReportEnvelope)
def reduce_graph(body: ReduceRequest):
    """
    Induced forest through the reduction rules.

    The certificate carries the full trace; components up to `threshold`
    vertices are solved exactly.
    """
    return GraphController.reduce(body)


@router.post("/verify", response_model=ReportEnvelope)
def verify_certificate(body: VerifyRequest):
    return GraphController.verify(body)


@router.post("/audit", response_model=ReportEnvelope)
def audit_graph(body: AuditRequest):
    """Euler counting audit of a connected plane graph."""
    return GraphController.audit(body)
