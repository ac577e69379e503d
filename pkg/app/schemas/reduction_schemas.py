"""
Reduction trace and certificate schemas
"""
from pydantic import BaseModel
from typing import List, Optional

from app.enums import GraphClass, Guarantee, LeafMethod, StepKind


class ApexRecord(BaseModel):
    """Vertex added by a surgery, with its neighbours (original ids)"""
    label: int
    neighbors: List[int]


class ConditionalLift(BaseModel):
    """Vertices re-added only when the apex survives in the smaller forest"""
    apex: int
    vertices: List[int]


class ReductionStep(BaseModel):
    """One rule application (or split) in original vertex ids"""
    kind: StepKind
    rule: Optional[str] = None
    variant: Optional[str] = None
    triple: Optional[List[int]] = None
    matched: List[int] = []
    deleted: List[int] = []
    removed_edges: List[List[int]] = []
    added_edges: List[List[int]] = []
    apexes: List[ApexRecord] = []
    lift: List[int] = []
    lift_if_kept: List[ConditionalLift] = []
    n_before: int
    m_before: int
    n_after: int
    m_after: int
    depth: int = 0


class ReductionLeaf(BaseModel):
    """A component settled without further reduction"""
    method: LeafMethod
    n: int
    m: int
    forest: List[int]
    proven_optimal: bool = True
    depth: int = 0


class ForestCertificate(BaseModel):
    """Induced forest together with the trace that justifies its size"""
    graph_class: GraphClass
    n: int
    m: int
    vertices: List[int]
    size: int
    claimed_bound: str
    claimed_ceiling: int
    bound_vertex: List[str]
    guarantee: Guarantee
    threshold: int
    trace: List[ReductionStep]
    leaves: List[ReductionLeaf]


class CheckResult(BaseModel):
    """Outcome of one verification check"""
    name: str
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    """Per-check verdicts of a certificate verification"""
    passed: bool
    checks: List[CheckResult]
