"""
Graph and audit report schemas
"""
from pydantic import BaseModel
from typing import Dict, List, Optional, Union

from app.enums import GraphClass


class GraphInfo(BaseModel):
    """Summary statistics of a parsed graph"""
    n: int
    m: int
    girth: Union[int, str]  # "infinite" for forests
    degree_counts: Dict[int, int]
    max_degree: int
    components: int
    two_edge_connected: bool
    has_rotation: bool
    face_count: Optional[int] = None
    face_lengths: Optional[Dict[int, int]] = None
    classes: List[GraphClass] = []


class FaceAudit(BaseModel):
    """One traced face with its heavy-vertex count"""
    index: int
    length: int
    walk: List[int]
    heavy_vertices: int  # c_{4+} in girth4 mode, c_4 in girth5 mode


class InequalityCheck(BaseModel):
    """Evaluation of one counting inequality lhs >= rhs"""
    name: str
    statement: str
    lhs: int
    rhs: int
    holds: bool


class Violation(BaseModel):
    """A reducible configuration the counting argument forces"""
    predicate: str
    face: Optional[int] = None
    vertices: List[int]


class AuditReport(BaseModel):
    """Discharging audit of a connected plane graph"""
    mode: GraphClass
    n: int
    m: int
    vertex_counts: Dict[int, int]  # n_d
    face_counts: Dict[int, int]  # k_l
    faces: List[FaceAudit]
    euler_sum: int
    inequalities: List[InequalityCheck]
    violations: List[Violation]
