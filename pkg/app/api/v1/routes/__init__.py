"""
API v1 routes package.
"""

from .health_routes import router as health_router
from .graph_routes import router as graph_router
from .bounds_routes import router as bounds_router
from .family_routes import router as family_router

__all__ = [
    "health_router",
    "graph_router",
    "bounds_router",
    "family_router",
]
