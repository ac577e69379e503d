"""
Domain value objects for the application.
"""

from .graph import Graph, FaceSet, CycleSides, INFINITE_GIRTH
from .bounds import HalfPlane, Polygon, Triple, LinearForm, BoundFormula

__all__ = [
    "Graph",
    "FaceSet",
    "CycleSides",
    "INFINITE_GIRTH",
    "HalfPlane",
    "Polygon",
    "Triple",
    "LinearForm",
    "BoundFormula"
]
