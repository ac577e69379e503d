"""
Bound catalog, polygon and triple schemas
"""
from pydantic import BaseModel
from typing import Dict, List, Optional

from app.enums import Applicability, BoundKind, FormulaStatus, GraphClass


class FormulaEntry(BaseModel):
    """Catalog metadata of one bound formula"""
    id: str
    expression: str
    kind: BoundKind
    status: FormulaStatus
    applicability: Applicability
    inputs: List[str]
    min_girth: Optional[int] = None
    graph_class: Optional[GraphClass] = None
    source: str = ""


class FormulaValue(BaseModel):
    """Exact value of a formula at given inputs"""
    formula: FormulaEntry
    inputs: Dict[str, str]
    value: str
    ceiling: int


class BestBound(BaseModel):
    """Maximum of a*n - b*m over the class polygon"""
    graph_class: GraphClass
    n: int
    m: int
    value: str
    ceiling: int
    vertex: List[str]


class ConstraintEntry(BaseModel):
    label: str
    statement: str


class PolygonReport(BaseModel):
    """Constraint polygon of a class with its exact vertices"""
    graph_class: GraphClass
    constraints: List[ConstraintEntry]
    vertices: List[List[str]]


class TripleRow(BaseModel):
    """Verdict of one accounting triple against its polygon"""
    triple: List[int]
    proof: str
    holds: bool
    maximum: str
    slack: str
    tight_vertices: List[List[str]]
    multipliers: Dict[str, str]
    certificate_valid: bool


class TripleTable(BaseModel):
    graph_class: GraphClass
    rows: List[TripleRow]
    all_hold: bool


class CorollaryReport(BaseModel):
    """Bound obtained by substituting the girth edge bound for m"""
    base: str
    girth: int
    expression: str


class KowalikReport(BaseModel):
    """Claimed versus actual forest number on disjoint cubes"""
    k: int
    n: int
    m: int
    claimed: str
    actual: int
    per_cube_forest: int
    margin: str
    violated: bool


class TightnessRow(BaseModel):
    """Corollary value against the exact forest number of a witness graph"""
    girth: int
    formula: str
    family: str
    n: int
    m: int
    bound: str
    ceiling: int
    forest_number: int
    gap: int
