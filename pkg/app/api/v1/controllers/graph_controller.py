from app.enums import GraphClass
from app.schemas.report_schemas import AuditRequest, ExactRequest, GraphRequest, ReduceRequest, ReportEnvelope, VerifyRequest
from app.schemas.solver_schemas import SolverConfig
from app.services.audit_service import AuditService
from app.services.exact_solver_service import ExactSolverService
from app.services.graph_service import GraphService
from app.services.reduction_engine import ReductionService
from app.services.report_service import ReportService
from app.utils.graph_io import parse_graph
from app.core.logger import get_logger

logger = get_logger("graph_controller")


class GraphController:
    """Controller for requests that carry a graph file."""

    @staticmethod
    def info(body: GraphRequest) -> ReportEnvelope:
        g = parse_graph(body.graph).graph
        return ReportService.envelope("info", GraphService.info(g), body.graph)

    @staticmethod
    def exact(body: ExactRequest) -> ReportEnvelope:
        g = parse_graph(body.graph).graph
        overrides = {"time_limit_s": body.limit_s, "node_limit": body.node_limit, "jobs": body.jobs}
        config = SolverConfig(tie_break=body.tie_break, **{k: v for k, v in overrides.items() if v is not None})
        result = ExactSolverService.forest_number_exact(g, config)
        return ReportService.envelope("exact", result, body.graph)

    @staticmethod
    def reduce(body: ReduceRequest) -> ReportEnvelope:
        g = parse_graph(body.graph).graph
        certificate = ReductionService.reduce(g, body.graph_class, body.threshold)
        return ReportService.envelope("reduce", certificate, body.graph)

    @staticmethod
    def verify(body: VerifyRequest) -> ReportEnvelope:
        g = parse_graph(body.graph).graph
        report = ReductionService.verify_certificate(g, body.certificate)
        if not report.passed:
            logger.info(f"Certificate rejected: {[c.name for c in report.checks if not c.passed]}")
        return ReportService.envelope("verify", report, body.graph)

    @staticmethod
    def audit(body: AuditRequest) -> ReportEnvelope:
        g = parse_graph(body.graph).graph
        report = AuditService.discharging_audit(g, GraphClass(body.mode))
        return ReportService.envelope("audit", report, body.graph)
