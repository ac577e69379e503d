"""
Exact-rational values for the bound algebra: half-planes in the (a, b)
coefficient plane, their polygon, accounting triples and bound formulas.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Dict, Optional, Tuple

from app.enums import Applicability, BoundKind, FormulaStatus, GraphClass
from app.exceptions.errors import CatalogError

Point = Tuple[Fraction, Fraction]


def format_fraction(value: Fraction) -> str:
    """Exact fraction string; integers carry no denominator."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class HalfPlane:
    """c_a * a + c_b * b <= rhs."""
    c_a: Fraction
    c_b: Fraction
    rhs: Fraction
    label: str = ""

    def __post_init__(self):
        for name in ("c_a", "c_b", "rhs"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.c_a == 0 and self.c_b == 0:
            raise CatalogError(f"half-plane {self.label or '?'} has no variable coefficient")

    def value(self, point: Point) -> Fraction:
        a, b = point
        return self.c_a * a + self.c_b * b

    def contains(self, point: Point) -> bool:
        return self.value(point) <= self.rhs

    def __str__(self) -> str:
        terms = []
        for coef, var in ((self.c_a, "a"), (self.c_b, "b")):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            body = var if mag == 1 else f"{format_fraction(mag)}{var}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return f"{text} <= {format_fraction(self.rhs)}"


@dataclass(frozen=True)
class Polygon:
    """Feasible (a, b) region with its exact vertex list."""
    graph_class: GraphClass
    constraints: Tuple[HalfPlane, ...]
    vertices: Tuple[Point, ...]

    def contains(self, point: Point) -> bool:
        return all(h.contains(point) for h in self.constraints)

    def constraint(self, label: str) -> HalfPlane:
        for h in self.constraints:
            if h.label == label:
                return h
        raise CatalogError(f"polygon {self.graph_class.value} has no constraint labelled {label!r}")


@dataclass(frozen=True)
class Triple:
    """(alpha, beta, gamma) accounting triple with its proof combination."""
    alpha: int
    beta: int
    gamma: int
    proof: str = ""

    def __post_init__(self):
        if self.alpha < 1 or self.beta < 0 or self.gamma < 0:
            raise CatalogError(f"invalid triple {self.as_tuple()}")

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.alpha, self.beta, self.gamma)

    def slack(self, point: Point) -> Fraction:
        a, b = point
        return self.gamma - (a * self.alpha - b * self.beta)

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta},{self.gamma})"


@dataclass(frozen=True)
class LinearForm:
    """c_n * n + c_m * m + c_0 with rational coefficients."""
    c_n: Fraction = Fraction(0)
    c_m: Fraction = Fraction(0)
    c_0: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("c_n", "c_m", "c_0"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def evaluate(self, n: int, m: int = 0) -> Fraction:
        return self.c_n * n + self.c_m * m + self.c_0

    def substitute_m(self, slope: Fraction, intercept: Fraction) -> "LinearForm":
        """Replace m by slope * n + intercept."""
        return LinearForm(
            self.c_n + self.c_m * slope,
            Fraction(0),
            self.c_0 + self.c_m * intercept,
        )

    def __str__(self) -> str:
        denom = lcm(self.c_n.denominator, self.c_m.denominator, self.c_0.denominator)
        parts = []
        for coef, var in ((self.c_n, "n"), (self.c_m, "m"), (self.c_0, "")):
            num = coef * denom
            if num == 0:
                continue
            mag = abs(num.numerator)
            body = (str(mag) if mag != 1 or not var else "") + var
            parts.append(("-" if num < 0 else "+", body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f"{sign}{body}"
        if denom == 1:
            return text
        return f"({text})/{denom}"


Evaluator = Callable[[Dict[str, Fraction]], Fraction]


@dataclass(frozen=True)
class BoundFormula:
    """Catalog entry: a bound on the forest number for some graph class."""
    id: str
    expression: str
    kind: BoundKind
    status: FormulaStatus
    applicability: Applicability
    inputs: Tuple[str, ...] = ("n",)
    pieces: Optional[Tuple[LinearForm, ...]] = None
    evaluator: Optional[Evaluator] = field(default=None, compare=False)
    min_girth: Optional[int] = None
    graph_class: Optional[GraphClass] = None
    source: str = ""

    @property
    def is_linear(self) -> bool:
        return self.pieces is not None
