import pytest

from app.enums import GraphClass
from app.services.svg_plot_service import SvgPlotService


@pytest.mark.parametrize("graph_class, labels, constraint_lines", [
    (GraphClass.GIRTH4, ["(0, 0)", "(1/8, 3/4)", "(7/44, 19/22)", "(1/4, 1)"], 6),
    (GraphClass.GIRTH5, ["(0, 0)", "(3/16, 15/16)", "(5/23, 1)"], 5),
])
def test_polygon_drawing(graph_class, labels, constraint_lines):
    svg = SvgPlotService.plot_polygon(graph_class)
    assert svg.lstrip().startswith("<?xml")
    assert "<svg" in svg
    for label in labels:
        assert label in svg
    assert svg.count('<line class="constraint"') == constraint_lines
    assert svg.count('<circle class="vertex"') == len(labels)


def test_statements_are_escaped():
    svg = SvgPlotService.plot_polygon(GraphClass.GIRTH4)
    assert "&lt;=" in svg
    assert " <= " not in svg
