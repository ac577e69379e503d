"""
Enumerations shared by the graph, bound, solver and reduction services.
"""

from enum import Enum


class GraphClass(str, Enum):
    GIRTH4 = "girth4"
    GIRTH5 = "girth5"

    @property
    def min_girth(self) -> int:
        return 4 if self is GraphClass.GIRTH4 else 5


class Guarantee(str, Enum):
    CERTIFIED = "certified"
    HEURISTIC = "heuristic"


class TieBreak(str, Enum):
    CANONICAL = "canonical"          # first optimum in depth-first branch order
    LEXICOGRAPHIC = "lexicographic"  # smallest sorted witness among all optima


class FamilyName(str, Enum):
    CUBE = "cube"
    CUBES_DISJOINT = "cubes_disjoint"
    CUBE_MINUS_EDGE_DISJOINT = "cube_minus_edge_disjoint"
    CUBES_LINKED = "cubes_linked"
    DODECAHEDRON = "dodecahedron"
    DODECAHEDRA_DISJOINT = "dodecahedra_disjoint"
    HOSONO_CHAIN = "hosono_chain"
    GIRTH6_FIXTURE = "girth6_fixture"
    GIRTH7_FIXTURE = "girth7_fixture"
    GRID_QUADRANGULATION = "grid_quadrangulation"
    CYCLE = "cycle"
    PATH = "path"


class BoundKind(str, Enum):
    LOWER = "lower"
    UPPER = "upper"
    WITNESS = "witness"


class FormulaStatus(str, Enum):
    PROVEN = "proven"
    REFUTED = "refuted"
    UNPROVEN = "unproven"


class Applicability(str, Enum):
    PLANAR = "planar"
    OUTERPLANAR = "outerplanar"
    TRIANGLE_FREE_PLANAR = "triangle_free_planar"
    GIRTH_AT_LEAST = "girth_at_least"
    TRIANGLE_FREE_CUBIC = "triangle_free_cubic"
    CONNECTED_BOUNDED_DEGREE = "connected_bounded_degree"


class StepKind(str, Enum):
    SURGERY = "surgery"
    BRIDGE = "bridge"
    SPLIT = "split"


class LeafMethod(str, Enum):
    EMPTY = "empty"
    EXACT = "exact"
    CYCLE = "cycle"
    GREEDY = "greedy"
