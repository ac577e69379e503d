from typing import Optional

from fastapi.responses import Response

from app.enums import GraphClass
from app.schemas.report_schemas import ReportEnvelope
from app.services.bounds_service import BoundsService
from app.services.report_service import ReportService
from app.services.svg_plot_service import SvgPlotService


class BoundsController:
    """Controller for the bound catalog, class polygons and triples."""

    @staticmethod
    def catalog() -> ReportEnvelope:
        return ReportService.envelope("bound", BoundsService.catalog())

    @staticmethod
    def formula(formula_id: str, n: Optional[int], m: Optional[int], g: Optional[int],
                alpha: Optional[int], max_degree: Optional[int]) -> ReportEnvelope:
        value = BoundsService.formula_value(formula_id, n=n, m=m, g=g, alpha=alpha, max_degree=max_degree)
        return ReportService.envelope("bound", value)

    @staticmethod
    def best(graph_class: GraphClass, n: int, m: int) -> ReportEnvelope:
        return ReportService.envelope("bound", BoundsService.best_bound_report(graph_class, n, m))

    @staticmethod
    def triples(graph_class: GraphClass) -> ReportEnvelope:
        return ReportService.envelope("triples", BoundsService.triple_table(graph_class))

    @staticmethod
    def kowalik(k: int) -> ReportEnvelope:
        return ReportService.envelope("refute-kowalik", BoundsService.kowalik_refutation(k))

    @staticmethod
    def polygon_svg(graph_class: GraphClass) -> Response:
        return Response(content=SvgPlotService.plot_polygon(graph_class), media_type="image/svg+xml")
