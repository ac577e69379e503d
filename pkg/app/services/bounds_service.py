"""
Bound algebra over exact rationals.

The (a, b) plane holds every candidate lower bound a*n - b*m. A class polygon
collects the constraints under which the reduction argument closes; its
vertices give the best bound, and accounting triples are checked against it.
"""
import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import ceil
from typing import Dict, List, Optional, Sequence, Tuple

import sympy as sp
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, lpmax

from app.enums import Applicability, BoundKind, FamilyName, FormulaStatus, GraphClass
from app.models.bounds import BoundFormula, HalfPlane, LinearForm, Point, Polygon, Triple, format_fraction
from app.schemas.bound_schemas import (
    BestBound,
    ConstraintEntry,
    CorollaryReport,
    FormulaEntry,
    FormulaValue,
    KowalikReport,
    PolygonReport,
    TightnessRow,
    TripleRow,
    TripleTable,
)
from app.schemas.solver_schemas import SolverConfig
from app.exceptions.errors import CatalogError, FormulaInputError, PreconditionError
from app.services.exact_solver_service import ExactSolverService
from app.services.family_service import FamilyService, FamilySpec
from app.core.logger import get_logger

logger = get_logger("bounds_service")

F = Fraction

CONSTRAINTS: Dict[GraphClass, Tuple[HalfPlane, ...]] = {
    GraphClass.GIRTH4: (
        HalfPlane(1, 0, 1, "1"),
        HalfPlane(0, -1, 0, "2"),
        HalfPlane(1, -6, 0, "3"),
        HalfPlane(3, -10, 1, "4"),
        HalfPlane(8, -12, 5, "5"),
        HalfPlane(-1, 0, 0, "0"),
    ),
    GraphClass.GIRTH5: (
        HalfPlane(1, 0, 1, "1"),
        HalfPlane(0, -1, 0, "2"),
        HalfPlane(1, -5, 0, "3"),
        HalfPlane(11, -23, 6, "4"),
        HalfPlane(-1, 0, 0, "0"),
    ),
}

TRIPLES: Dict[GraphClass, Tuple[Triple, ...]] = {
    GraphClass.GIRTH4: (
        Triple(1, 6, 0, "(3)"),
        Triple(2, 5, 1, "((1)+(4))/2"),
        Triple(3, 5, 2, "(3(1)+(4))/2"),
        Triple(1, 1, 1, "(1)+(2)"),
        Triple(5, 9, 3, "((1)+(3)+(5))/2"),
        Triple(6, 8, 4, "((1)+(5))*2/3"),
        Triple(4, 10, 2, "(1)+(4)"),
        Triple(7, 13, 4, "((1)+3(4)+4(5))/6"),
        Triple(3, 10, 1, "(4)"),
        Triple(8, 12, 5, "(5)"),
        Triple(6, 14, 3, "((3)+(4)+(5))/2"),
        Triple(8, 19, 4, "((1)+(3)+2(4)+(5))/2"),
        Triple(9, 24, 4, "((3)+3(4)+(5))/2"),
        Triple(10, 23, 5, "((1)+9(4)+4(5))/6"),
        Triple(9, 19, 5, "(3(1)+(3)+2(4)+(5))/2"),
    ),
    GraphClass.GIRTH5: (
        Triple(1, 5, 0, "(3)"),
        Triple(2, 5, 1, "(1)+(3)"),
        Triple(3, 5, 2, "2(1)+(3)"),
        Triple(5, 10, 3, "3(1)+2(3)"),
        Triple(1, 0, 1, "(1)"),
        Triple(6, 14, 3, "((3)+(4))/2"),
        Triple(6, 10, 4, "4(1)+2(3)"),
        Triple(7, 14, 4, "(1)+((3)+(4))/2"),
        Triple(7, 10, 5, "5(1)+2(3)"),
        Triple(10, 15, 7, "7(1)+3(3)"),
        Triple(8, 14, 5, "2(1)+((3)+(4))/2"),
        Triple(10, 20, 6, "6(1)+4(3)"),
        Triple(11, 19, 7, "4(1)+(3(3)+(4))/2"),
        Triple(12, 23, 7, "(1)+(4)"),
        Triple(8, 19, 4, "(1)+(3(3)+(4))/2"),
        Triple(9, 15, 6, "6(1)+3(3)"),
        Triple(11, 23, 6, "(4)"),
        Triple(13, 23, 8, "2(1)+(4)"),
    ),
}


def _n_only(c_n, c_0=0) -> Tuple[LinearForm, ...]:
    return (LinearForm(F(c_n), F(0), F(c_0)),)


def _alon_degree(values: Dict[str, Fraction]) -> Fraction:
    alpha, n, delta = values["alpha"], values["n"], values["max_degree"]
    return alpha + (n - alpha) / (delta - 1) ** 2


def _girth_corollary(values: Dict[str, Fraction]) -> Fraction:
    n, g = values["n"], values["g"]
    return n - (5 * n - 10) * g / (23 * (g - 2))


def _half_ceiling(values: Dict[str, Fraction]) -> Fraction:
    return F(ceil(values["n"] / 2))


CATALOG: Tuple[BoundFormula, ...] = (
    BoundFormula("borodin_planar", "2n/5", BoundKind.LOWER, FormulaStatus.PROVEN, Applicability.PLANAR,
                 pieces=_n_only(F(2, 5)), source="acyclic 5-colouring of planar graphs"),
    BoundFormula("hosono_outerplanar", "2n/3", BoundKind.LOWER, FormulaStatus.PROVEN, Applicability.OUTERPLANAR,
                 pieces=_n_only(F(2, 3)), source="acyclic 3-colouring of outerplanar graphs; tight"),
    BoundFormula("alon_triangle_free", "n - m/4", BoundKind.LOWER, FormulaStatus.PROVEN,
                 Applicability.TRIANGLE_FREE_PLANAR, inputs=("n", "m"),
                 pieces=(LinearForm(1, F(-1, 4)),), graph_class=GraphClass.GIRTH4,
                 source="every triangle-free graph; tight on disjoint 4-cycles"),
    BoundFormula("alon_cubic", "5n/8", BoundKind.LOWER, FormulaStatus.PROVEN, Applicability.TRIANGLE_FREE_CUBIC,
                 pieces=_n_only(F(5, 8)), source="triangle-free cubic graphs"),
    BoundFormula("alon_degree", "alpha + (n - alpha)/(D - 1)^2", BoundKind.LOWER, FormulaStatus.PROVEN,
                 Applicability.CONNECTED_BOUNDED_DEGREE, inputs=("n", "alpha", "max_degree"),
                 evaluator=_alon_degree, source="connected graphs of maximum degree D, independence number alpha"),
    BoundFormula("salavatipour_nm", "(29n - 6m)/32", BoundKind.LOWER, FormulaStatus.PROVEN,
                 Applicability.TRIANGLE_FREE_PLANAR, inputs=("n", "m"),
                 pieces=(LinearForm(F(29, 32), F(-6, 32)),), graph_class=GraphClass.GIRTH4),
    BoundFormula("salavatipour_n", "(17n + 24)/32", BoundKind.LOWER, FormulaStatus.PROVEN,
                 Applicability.TRIANGLE_FREE_PLANAR, pieces=_n_only(F(17, 32), F(24, 32)),
                 graph_class=GraphClass.GIRTH4),
    BoundFormula("kowalik_nm", "(119n - 24m - 24)/128", BoundKind.LOWER, FormulaStatus.REFUTED,
                 Applicability.TRIANGLE_FREE_PLANAR, inputs=("n", "m"),
                 pieces=(LinearForm(F(119, 128), F(-24, 128), F(-24, 128)),), graph_class=GraphClass.GIRTH4,
                 source="violated by k >= 2 disjoint cubes"),
    BoundFormula("kowalik_n", "(71n + 72)/128", BoundKind.LOWER, FormulaStatus.UNPROVEN,
                 Applicability.TRIANGLE_FREE_PLANAR, pieces=_n_only(F(71, 128), F(72, 128)),
                 graph_class=GraphClass.GIRTH4, source="derived from the refuted n, m form"),
    BoundFormula("main", "max{(38n - 7m)/44, n - m/4}", BoundKind.LOWER, FormulaStatus.PROVEN,
                 Applicability.TRIANGLE_FREE_PLANAR, inputs=("n", "m"),
                 pieces=(LinearForm(F(38, 44), F(-7, 44)), LinearForm(1, F(-1, 4))),
                 graph_class=GraphClass.GIRTH4, source="girth-4 polygon vertices (19/22, 7/44) and (1, 1/4)"),
    BoundFormula("comain", "(6n + 7)/11", BoundKind.LOWER, FormulaStatus.PROVEN,
                 Applicability.TRIANGLE_FREE_PLANAR, pieces=_n_only(F(6, 11), F(7, 11)),
                 graph_class=GraphClass.GIRTH4, source="main with m <= 2n - 4"),
    BoundFormula("bmain", "n - 5m/23", BoundKind.LOWER, FormulaStatus.PROVEN, Applicability.GIRTH_AT_LEAST,
                 inputs=("n", "m"), pieces=(LinearForm(1, F(-5, 23)),), min_girth=5,
                 graph_class=GraphClass.GIRTH5, source="girth-5 polygon vertex (1, 5/23)"),
    BoundFormula("bcomain", "(44n + 50)/69", BoundKind.LOWER, FormulaStatus.PROVEN, Applicability.GIRTH_AT_LEAST,
                 pieces=_n_only(F(44, 69), F(50, 69)), min_girth=5, graph_class=GraphClass.GIRTH5,
                 source="bmain with m <= 5(n - 2)/3"),
    BoundFormula("bcomainbis", "n - (5n - 10)g/(23(g - 2))", BoundKind.LOWER, FormulaStatus.PROVEN,
                 Applicability.GIRTH_AT_LEAST, inputs=("n", "g"), evaluator=_girth_corollary, min_girth=5,
                 source="bmain with m <= g(n - 2)/(g - 2)"),
    BoundFormula("girth6_corollary", "(31n + 30)/46", BoundKind.LOWER, FormulaStatus.PROVEN,
                 Applicability.GIRTH_AT_LEAST, pieces=_n_only(F(31, 46), F(30, 46)), min_girth=6),
    BoundFormula("girth7_corollary", "(16n + 14)/23", BoundKind.LOWER, FormulaStatus.PROVEN,
                 Applicability.GIRTH_AT_LEAST, pieces=_n_only(F(16, 23), F(14, 23)), min_girth=7),
    BoundFormula("fertin_planar_upper", "ceil(n/2)", BoundKind.UPPER, FormulaStatus.PROVEN,
                 Applicability.PLANAR, evaluator=_half_ceiling),
    BoundFormula("fertin_girth5_lower", "n/2", BoundKind.LOWER, FormulaStatus.PROVEN,
                 Applicability.GIRTH_AT_LEAST, pieces=_n_only(F(1, 2)), min_girth=5),
    BoundFormula("fertin_girth5_upper", "7n/10 + 2", BoundKind.UPPER, FormulaStatus.PROVEN,
                 Applicability.GIRTH_AT_LEAST, pieces=_n_only(F(7, 10), 2), min_girth=5),
    BoundFormula("fertin_girth7_lower", "2n/3", BoundKind.LOWER, FormulaStatus.PROVEN,
                 Applicability.GIRTH_AT_LEAST, pieces=_n_only(F(2, 3)), min_girth=7),
    BoundFormula("fertin_girth7_upper", "5n/6 + 1", BoundKind.UPPER, FormulaStatus.PROVEN,
                 Applicability.GIRTH_AT_LEAST, pieces=_n_only(F(5, 6), 1), min_girth=7),
    BoundFormula("cubes_witness", "5n/8", BoundKind.WITNESS, FormulaStatus.PROVEN,
                 Applicability.TRIANGLE_FREE_PLANAR, pieces=_n_only(F(5, 8)), graph_class=GraphClass.GIRTH4,
                 source="disjoint cubes"),
    BoundFormula("dodecahedra_witness", "7n/10", BoundKind.WITNESS, FormulaStatus.PROVEN,
                 Applicability.GIRTH_AT_LEAST, pieces=_n_only(F(7, 10)), min_girth=5,
                 graph_class=GraphClass.GIRTH5, source="disjoint dodecahedra"),
    BoundFormula("girth6_witness", "23n/30", BoundKind.WITNESS, FormulaStatus.PROVEN,
                 Applicability.GIRTH_AT_LEAST, pieces=_n_only(F(23, 30)), min_girth=6,
                 source="copies of the 30-vertex girth-6 fixture"),
    BoundFormula("girth7_witness", "17n/21", BoundKind.WITNESS, FormulaStatus.PROVEN,
                 Applicability.GIRTH_AT_LEAST, pieces=_n_only(F(17, 21)), min_girth=7,
                 source="copies of the 42-vertex girth-7 fixture"),
)

_FORMULAS: Dict[str, BoundFormula] = {f.id: f for f in CATALOG}

# girth -> (corollary formula, witness family)
TIGHTNESS_WITNESSES: Dict[int, Tuple[str, FamilyName]] = {
    4: ("comain", FamilyName.CUBE),
    5: ("bcomain", FamilyName.DODECAHEDRON),
    6: ("girth6_corollary", FamilyName.GIRTH6_FIXTURE),
    7: ("girth7_corollary", FamilyName.GIRTH7_FIXTURE),
}

_TOKEN = re.compile(r"\s*(\d+|[()+*/])")


class _ProofParser:
    """Nonnegative combination of labelled constraints, e.g. 2(1)+((3)+(4))/2."""

    def __init__(self, text: str):
        self.text = text
        self.tokens: List[str] = []
        pos = 0
        stripped = text.strip()
        while pos < len(stripped):
            match = _TOKEN.match(stripped, pos)
            if match is None:
                raise CatalogError(f"unexpected character in proof tag {text!r} at {pos}")
            self.tokens.append(match.group(1))
            pos = match.end()
        self.pos = 0

    def parse(self) -> Dict[str, Fraction]:
        result = self._expr()
        if self.pos != len(self.tokens):
            raise CatalogError(f"trailing tokens in proof tag {self.text!r}")
        return result

    def _peek(self, offset: int = 0) -> Optional[str]:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def _take(self, expected: Optional[str] = None) -> str:
        token = self._peek()
        if token is None or (expected is not None and token != expected):
            raise CatalogError(f"malformed proof tag {self.text!r}")
        self.pos += 1
        return token

    def _expr(self) -> Dict[str, Fraction]:
        total = self._term()
        while self._peek() == "+":
            self._take("+")
            for label, weight in self._term().items():
                total[label] = total.get(label, F(0)) + weight
        return total

    def _term(self) -> Dict[str, Fraction]:
        combo = self._unit()
        while self._peek() in ("*", "/"):
            op = self._take()
            factor = F(int(self._take()))
            if op == "/" and factor == 0:
                raise CatalogError(f"division by zero in proof tag {self.text!r}")
            scale = factor if op == "*" else 1 / factor
            combo = {label: weight * scale for label, weight in combo.items()}
        return combo

    def _unit(self) -> Dict[str, Fraction]:
        coefficient = F(1)
        if self._peek() is not None and self._peek().isdigit():
            coefficient = F(int(self._take()))
        self._take("(")
        if self._peek() is not None and self._peek().isdigit() and self._peek(1) == ")":
            label = self._take()
            self._take(")")
            return {label: coefficient}
        inner = self._expr()
        self._take(")")
        return {label: coefficient * weight for label, weight in inner.items()}


def _intersection(h: HalfPlane, k: HalfPlane) -> Optional[Point]:
    det = h.c_a * k.c_b - h.c_b * k.c_a
    if det == 0:
        return None
    a = (h.rhs * k.c_b - h.c_b * k.rhs) / det
    b = (h.c_a * k.rhs - h.rhs * k.c_a) / det
    return (a, b)


def _point(point: Point) -> List[str]:
    return [format_fraction(point[0]), format_fraction(point[1])]


@lru_cache(maxsize=None)
def _polygon(graph_class: GraphClass) -> Polygon:
    constraints = CONSTRAINTS[graph_class]
    return Polygon(graph_class, constraints, tuple(BoundsService.polygon_vertices(constraints)))


class BoundsService:
    """Service for the bound catalog, class polygons and accounting triples."""

    # --- polygons ---------------------------------------------------

    @staticmethod
    def polygon_vertices(constraints: Sequence[HalfPlane]) -> List[Point]:
        """Feasible pairwise intersections, deduplicated and sorted.

        Raises CatalogError when the region is empty, has no vertex, or lets
        a*n - b*m grow without bound for some n, m >= 0.
        """
        if not constraints:
            raise CatalogError("polygon has no constraints")
        vertices = set()
        for h, k in combinations(constraints, 2):
            point = _intersection(h, k)
            if point is not None and all(c.contains(point) for c in constraints):
                vertices.add(point)
        if not vertices:
            raise CatalogError("feasible region is empty or has no vertex")

        # extreme recession directions lie along constraint boundaries
        for h in constraints:
            for direction in ((-h.c_b, h.c_a), (h.c_b, -h.c_a)):
                if not all(c.c_a * direction[0] + c.c_b * direction[1] <= 0 for c in constraints):
                    continue
                if direction[0] > 0 or direction[1] < 0:
                    raise CatalogError(
                        f"region is unbounded along ({format_fraction(direction[0])}, "
                        f"{format_fraction(direction[1])})"
                    )
        return sorted(vertices)

    @staticmethod
    def polygon(graph_class: GraphClass) -> Polygon:
        return _polygon(graph_class)

    @staticmethod
    def polygon_report(graph_class: GraphClass) -> PolygonReport:
        polygon = _polygon(graph_class)
        return PolygonReport(
            graph_class=graph_class,
            constraints=[ConstraintEntry(label=h.label, statement=str(h)) for h in polygon.constraints],
            vertices=[_point(v) for v in polygon.vertices],
        )

    @staticmethod
    def best_bound(graph_class: GraphClass, n: int, m: int) -> Tuple[Fraction, Point]:
        if n < 0 or m < 0:
            raise PreconditionError(f"n and m must be non-negative, got n={n}, m={m}")
        best_value: Optional[Fraction] = None
        best_vertex: Optional[Point] = None
        for a, b in _polygon(graph_class).vertices:
            value = a * n - b * m
            if best_value is None or value > best_value:
                best_value, best_vertex = value, (a, b)
        return best_value, best_vertex

    @staticmethod
    def best_bound_report(graph_class: GraphClass, n: int, m: int) -> BestBound:
        value, vertex = BoundsService.best_bound(graph_class, n, m)
        return BestBound(
            graph_class=graph_class,
            n=n,
            m=m,
            value=format_fraction(value),
            ceiling=ceil(value),
            vertex=_point(vertex),
        )

    @staticmethod
    def lp_maximum(polygon: Polygon, c_a: Fraction, c_b: Fraction) -> Fraction:
        """max c_a*a + c_b*b over the polygon, solved as a linear program."""
        a, b = sp.symbols("a b")
        constraints = [
            sp.Rational(h.c_a.numerator, h.c_a.denominator) * a
            + sp.Rational(h.c_b.numerator, h.c_b.denominator) * b
            <= sp.Rational(h.rhs.numerator, h.rhs.denominator)
            for h in polygon.constraints
        ]
        objective = sp.Rational(F(c_a).numerator, F(c_a).denominator) * a + sp.Rational(
            F(c_b).numerator, F(c_b).denominator
        ) * b
        try:
            value, _ = lpmax(objective, constraints)
        except (UnboundedLPError, InfeasibleLPError) as exc:
            raise CatalogError(f"linear program over {polygon.graph_class.value} failed: {exc}")
        value = sp.Rational(value)
        return F(int(value.p), int(value.q))

    # --- triples ----------------------------------------------------

    @staticmethod
    def triples(graph_class: GraphClass) -> Tuple[Triple, ...]:
        return TRIPLES[graph_class]

    @staticmethod
    def check_triple(t: Triple, polygon: Polygon) -> bool:
        return all(t.slack(v) >= 0 for v in polygon.vertices)

    @staticmethod
    def check_triple_lp(t: Triple, polygon: Polygon) -> bool:
        return BoundsService.lp_maximum(polygon, F(t.alpha), F(-t.beta)) <= t.gamma

    @staticmethod
    def triple_certificate(t: Triple, graph_class: GraphClass) -> Tuple[Dict[str, Fraction], bool]:
        """Multipliers of the proof tag and whether they certify the triple exactly."""
        polygon = _polygon(graph_class)
        if not t.proof:
            return {}, False
        multipliers = _ProofParser(t.proof).parse()
        total_a = total_b = total_rhs = F(0)
        for label, weight in multipliers.items():
            h = polygon.constraint(label)
            total_a += weight * h.c_a
            total_b += weight * h.c_b
            total_rhs += weight * h.rhs
        valid = (
            all(weight >= 0 for weight in multipliers.values())
            and total_a == t.alpha
            and total_b == -t.beta
            and total_rhs <= t.gamma
        )
        return dict(sorted(multipliers.items())), valid

    @staticmethod
    def triple_row(t: Triple, graph_class: GraphClass) -> TripleRow:
        polygon = _polygon(graph_class)
        values = [(a * t.alpha - b * t.beta, (a, b)) for a, b in polygon.vertices]
        maximum = max(value for value, _ in values)
        multipliers, valid = BoundsService.triple_certificate(t, graph_class)
        return TripleRow(
            triple=list(t.as_tuple()),
            proof=t.proof,
            holds=BoundsService.check_triple(t, polygon),
            maximum=format_fraction(maximum),
            slack=format_fraction(t.gamma - maximum),
            tight_vertices=[_point(v) for value, v in values if value == t.gamma],
            multipliers={label: format_fraction(w) for label, w in multipliers.items()},
            certificate_valid=valid,
        )

    @staticmethod
    def triple_table(graph_class: GraphClass) -> TripleTable:
        rows = [BoundsService.triple_row(t, graph_class) for t in TRIPLES[graph_class]]
        all_hold = all(row.holds and row.certificate_valid for row in rows)
        if not all_hold:
            logger.warning(f"Triple table {graph_class.value} has failing rows")
        return TripleTable(graph_class=graph_class, rows=rows, all_hold=all_hold)

    # --- formula catalog --------------------------------------------

    @staticmethod
    def catalog() -> List[FormulaEntry]:
        return [BoundsService.entry(f) for f in CATALOG]

    @staticmethod
    def entry(formula: BoundFormula) -> FormulaEntry:
        return FormulaEntry(
            id=formula.id,
            expression=formula.expression,
            kind=formula.kind,
            status=formula.status,
            applicability=formula.applicability,
            inputs=list(formula.inputs),
            min_girth=formula.min_girth,
            graph_class=formula.graph_class,
            source=formula.source,
        )

    @staticmethod
    def formula(formula_id: str) -> BoundFormula:
        try:
            return _FORMULAS[formula_id]
        except KeyError:
            raise FormulaInputError(f"unknown formula '{formula_id}'")

    @staticmethod
    def eval_formula(
        formula_id: str,
        n: Optional[int] = None,
        m: Optional[int] = None,
        g: Optional[int] = None,
        alpha: Optional[int] = None,
        max_degree: Optional[int] = None,
    ) -> Fraction:
        formula = BoundsService.formula(formula_id)
        given = {"n": n, "m": m, "g": g, "alpha": alpha, "max_degree": max_degree}
        values: Dict[str, Fraction] = {}
        for name in formula.inputs:
            if given[name] is None:
                raise FormulaInputError(f"formula '{formula_id}' needs input '{name}'")
            if given[name] < 0:
                raise FormulaInputError(f"input '{name}' must be non-negative, got {given[name]}")
            values[name] = F(given[name])

        if "g" in values and formula.min_girth is not None and values["g"] < formula.min_girth:
            raise FormulaInputError(f"formula '{formula_id}' applies from girth {formula.min_girth}, got g={g}")
        if "max_degree" in values and values["max_degree"] < 2:
            raise FormulaInputError(f"formula '{formula_id}' needs max_degree >= 2, got {max_degree}")
        if "alpha" in values and values["alpha"] > values["n"]:
            raise FormulaInputError(f"independence number {alpha} exceeds n={n}")

        if formula.evaluator is not None:
            return formula.evaluator(values)
        n_value = values["n"]
        m_value = values.get("m", F(0))
        return max(piece.evaluate(n_value, m_value) for piece in formula.pieces)

    @staticmethod
    def formula_value(formula_id: str, **inputs: Optional[int]) -> FormulaValue:
        value = BoundsService.eval_formula(formula_id, **inputs)
        return FormulaValue(
            formula=BoundsService.entry(BoundsService.formula(formula_id)),
            inputs={name: str(v) for name, v in inputs.items() if v is not None},
            value=format_fraction(value),
            ceiling=ceil(value),
        )

    @staticmethod
    def derive_corollary(base: str, g: int) -> LinearForm:
        """Substitute the girth edge bound m = g(n - 2)/(g - 2) into a linear n, m formula.

        For a maximum of several pieces the piece with the largest n-coefficient
        is kept; it is the one that governs large n.
        """
        formula = BoundsService.formula(base)
        if not formula.is_linear:
            raise CatalogError(f"formula '{base}' is not linear in n and m")
        if any(piece.c_m >= 0 for piece in formula.pieces):
            raise CatalogError(f"formula '{base}' does not decrease with m")
        if g < 3:
            raise PreconditionError(f"girth must be at least 3, got {g}")
        slope = F(g, g - 2)
        candidates = [piece.substitute_m(slope, -2 * slope) for piece in formula.pieces]
        return max(candidates, key=lambda form: (form.c_n, form.c_0))

    @staticmethod
    def corollary_report(base: str, g: int) -> CorollaryReport:
        return CorollaryReport(base=base, girth=g, expression=str(BoundsService.derive_corollary(base, g)))

    # --- witnesses ----------------------------------------------------

    @staticmethod
    def kowalik_refutation(k: int, config: Optional[SolverConfig] = None) -> KowalikReport:
        """Claimed n, m bound against k disjoint cubes (forest number additive over components)."""
        if k < 1:
            raise PreconditionError(f"k must be at least 1, got {k}")
        cube = FamilyService.cube()
        solved = ExactSolverService.forest_number_exact(cube, config)
        if not solved.proven_optimal:
            raise CatalogError("cube forest number could not be proven within the solver limits")
        per_cube = solved.forest_number
        n, m = 8 * k, 12 * k
        claimed = BoundsService.eval_formula("kowalik_nm", n=n, m=m)
        actual = per_cube * k
        report = KowalikReport(
            k=k,
            n=n,
            m=m,
            claimed=format_fraction(claimed),
            actual=actual,
            per_cube_forest=per_cube,
            margin=format_fraction(claimed - actual),
            violated=claimed > actual,
        )
        logger.info(f"Kowalik bound on {k} cube(s): claimed {report.claimed}, actual {actual}")
        return report

    @staticmethod
    def tightness_report(
        girths: Sequence[int] = (4, 5, 6, 7), config: Optional[SolverConfig] = None
    ) -> List[TightnessRow]:
        rows: List[TightnessRow] = []
        for girth in girths:
            if girth not in TIGHTNESS_WITNESSES:
                raise PreconditionError(f"no witness family for girth {girth}")
            formula_id, family = TIGHTNESS_WITNESSES[girth]
            g = FamilyService.make(FamilySpec(family, ()))
            bound = BoundsService.eval_formula(formula_id, n=g.n)
            solved = ExactSolverService.forest_number_exact(g, config)
            if not solved.proven_optimal:
                logger.warning(f"Forest number of {family.value} not proven optimal; gap is an upper estimate")
            rows.append(
                TightnessRow(
                    girth=girth,
                    formula=formula_id,
                    family=family.value,
                    n=g.n,
                    m=g.m,
                    bound=format_fraction(bound),
                    ceiling=ceil(bound),
                    forest_number=solved.forest_number,
                    gap=solved.forest_number - ceil(bound),
                )
            )
        return rows
