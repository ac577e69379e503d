import pytest
from fastapi.testclient import TestClient

from app.main import app
from app.services.family_service import FamilyService


@pytest.fixture
def cube():
    return FamilyService.cube()


@pytest.fixture
def dodecahedron():
    return FamilyService.dodecahedron()


@pytest.fixture
def grid():
    return FamilyService.grid_quadrangulation(4, 4)


@pytest.fixture(scope="session")
def client():
    with TestClient(app) as c:
        yield c
