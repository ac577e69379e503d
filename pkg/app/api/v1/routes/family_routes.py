from typing import List

from fastapi import APIRouter, Query

from app.api.v1.controllers.family_controller import FamilyController
from app.schemas.report_schemas import ReportEnvelope

router = APIRouter(prefix="/families", tags=["Families"])


@router.get("/{name}", response_model=ReportEnvelope)
def generate_family(name: str, params: List[int] = Query([])):
    """Family member as a graph file, with rotation and outer face."""
    return FamilyController.generate(name, params)
