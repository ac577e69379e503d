"""
Shared enums for the application.
"""

from .forest_enums import (
    GraphClass,
    Guarantee,
    TieBreak,
    FamilyName,
    BoundKind,
    FormulaStatus,
    Applicability,
    StepKind,
    LeafMethod
)

__all__ = [
    "GraphClass",
    "Guarantee",
    "TieBreak",
    "FamilyName",
    "BoundKind",
    "FormulaStatus",
    "Applicability",
    "StepKind",
    "LeafMethod"
]
