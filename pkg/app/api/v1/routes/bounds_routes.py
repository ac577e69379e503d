from typing import Optional

from fastapi import APIRouter, Query

from app.api.v1.controllers.bounds_controller import BoundsController
from app.enums import GraphClass
from app.schemas.report_schemas import ReportEnvelope

router = APIRouter(prefix="/bounds", tags=["Bounds"])


@router.get("/catalog", response_model=ReportEnvelope)
def bound_catalog():
    """Every catalog formula with its kind, status and inputs."""
    return BoundsController.catalog()


@router.get("/formula/{formula_id}", response_model=ReportEnvelope)
def formula_value(
    formula_id: str,
    n: Optional[int] = Query(None, ge=0),
    m: Optional[int] = Query(None, ge=0),
    g: Optional[int] = Query(None, ge=3, description="girth"),
    alpha: Optional[int] = Query(None, ge=0, description="independence number"),
    max_degree: Optional[int] = Query(None, ge=0),
):
    return BoundsController.formula(formula_id, n, m, g, alpha, max_degree)


@router.get("/best/{graph_class}", response_model=ReportEnvelope)
def best_bound(graph_class: GraphClass, n: int = Query(..., ge=0), m: int = Query(..., ge=0)):
    """Maximum of a*n - b*m over the class polygon."""
    return BoundsController.best(graph_class, n, m)


@router.get("/triples/{graph_class}", response_model=ReportEnvelope)
def triple_table(graph_class: GraphClass):
    return BoundsController.triples(graph_class)


@router.get("/kowalik", response_model=ReportEnvelope)
def kowalik_refutation(k: int = Query(..., ge=1, le=50)):
    """Claimed n, m bound against k disjoint cubes."""
    return BoundsController.kowalik(k)


@router.get("/polygon/{graph_class}.svg")
def polygon_svg(graph_class: GraphClass):
    return BoundsController.polygon_svg(graph_class)
