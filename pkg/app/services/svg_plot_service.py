import math
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple

from jinja2 import Environment, FileSystemLoader, select_autoescape

from app.enums import GraphClass
from app.models.bounds import HalfPlane, Point, format_fraction
from app.services.bounds_service import BoundsService
from app.core.logger import get_logger

logger = get_logger("svg_plot_service")

TEMPLATE_DIR = Path(__file__).resolve().parent.parent / "templates"

_env = Environment(
    loader=FileSystemLoader(str(TEMPLATE_DIR)),
    autoescape=select_autoescape(["svg", "j2"]),
    trim_blocks=True,
    lstrip_blocks=True,
)

WIDTH = 520
HEIGHT = 520
MARGIN = 50
A_MAX = Fraction(11, 10)


def _box_hits(h: HalfPlane, b_max: Fraction) -> List[Point]:
    """Where the boundary line of h crosses the plotting box, as (a, b) points."""
    hits = []
    if h.c_a != 0:
        for b in (Fraction(0), b_max):
            hits.append(((h.rhs - h.c_b * b) / h.c_a, b))
    if h.c_b != 0:
        for a in (Fraction(0), A_MAX):
            hits.append((a, (h.rhs - h.c_a * a) / h.c_b))
    inside = {(a, b) for a, b in hits if 0 <= a <= A_MAX and 0 <= b <= b_max}
    return sorted(inside, key=lambda p: (p[1], p[0]))


class SvgPlotService:
    """Service for drawing a class polygon in the (b, a) plane."""

    @staticmethod
    def _project(point: Point, b_max: Fraction) -> Tuple[float, float]:
        a, b = point
        x = MARGIN + float(b / b_max) * (WIDTH - 2 * MARGIN)
        y = HEIGHT - MARGIN - float(a / A_MAX) * (HEIGHT - 2 * MARGIN)
        return round(x, 2), round(y, 2)

    @staticmethod
    def plot_polygon(graph_class: GraphClass, b_max: Optional[Fraction] = None) -> str:
        polygon = BoundsService.polygon(graph_class)
        b_max = b_max or max(b for _, b in polygon.vertices) * Fraction(8, 5)

        def project(point: Point) -> Tuple[float, float]:
            return SvgPlotService._project(point, b_max)

        clipped = polygon.constraints + (HalfPlane(0, 1, b_max, "clip"),)
        corners = [project(p) for p in BoundsService.polygon_vertices(clipped)]
        cx = sum(x for x, _ in corners) / len(corners)
        cy = sum(y for _, y in corners) / len(corners)
        corners.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))

        lines = []
        for h in polygon.constraints:
            hits = _box_hits(h, b_max)
            if not hits:
                logger.warning(f"Constraint ({h.label}) of {graph_class.value} misses the plotting box")
                continue
            (x1, y1), (x2, y2) = project(hits[0]), project(hits[-1])
            lines.append({
                "label": h.label, "statement": str(h),
                "x1": x1, "y1": y1, "x2": x2, "y2": y2, "tx": x2 - 4, "ty": y2 - 4,
            })

        vertices = []
        for a, b in polygon.vertices:
            x, y = project((a, b))
            vertices.append({"x": x, "y": y, "label": f"({format_fraction(b)}, {format_fraction(a)})"})

        return _env.get_template("polygon.svg.j2").render(
            title=f"{graph_class.value} bound polygon",
            width=WIDTH,
            height=HEIGHT,
            margin=MARGIN,
            origin=project((Fraction(0), Fraction(0))),
            region=" ".join(f"{x},{y}" for x, y in corners),
            lines=lines,
            vertices=vertices,
        )
