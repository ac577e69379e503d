"""
Exact solver schemas
"""
from pydantic import BaseModel, Field
from typing import List, Optional

from app.core.config import settings
from app.enums import TieBreak


class SolverConfig(BaseModel):
    """Limits and policies of one exact solve"""
    node_limit: int = Field(default_factory=lambda: settings.SOLVER_NODE_LIMIT, gt=0)
    time_limit_s: float = Field(default_factory=lambda: settings.SOLVER_TIME_LIMIT_S, gt=0)
    tie_break: TieBreak = TieBreak.LEXICOGRAPHIC
    jobs: int = Field(default_factory=lambda: settings.SOLVER_JOBS, gt=0)


class SolveResult(BaseModel):
    """Forest number, decycling number and a witness forest"""
    n: int
    forest_number: int
    decycling_number: int
    witness: List[int]
    nodes: int
    elapsed_s: float
    proven_optimal: bool = True
    method: str = "branch_and_bound"


class IndependentSetResult(BaseModel):
    """Independence number with a witness set"""
    size: int
    witness: List[int]


class MaximumForests(BaseModel):
    """Every maximum induced forest of a small graph"""
    forest_number: int
    forests: List[List[int]]
    count: int
    truncated: bool = False
    limit: Optional[int] = None
