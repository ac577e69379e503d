from typing import List

from app.schemas.report_schemas import ReportEnvelope
from app.services.family_service import FamilyService
from app.services.report_service import ReportService
from app.utils.graph_io import emit_graph


class FamilyController:
    """Controller for generated family members."""

    @staticmethod
    def generate(name: str, params: List[int]) -> ReportEnvelope:
        spec = FamilyService.parse_spec(name, params)
        g = FamilyService.make(spec)
        text = emit_graph(g, [f"{spec.name.value} {' '.join(str(p) for p in spec.params)}".strip()])
        result = {"family": spec.name.value, "params": list(spec.params), "n": g.n, "m": g.m, "graph": text}
        return ReportService.envelope("gen", result, text)
