import pytest

from app.enums import GraphClass
from app.exceptions.errors import EmbeddingError, GraphClassMismatch, PreconditionError
from app.models.graph import FaceSet
from app.services.audit_service import AuditService
from app.services.embedding_service import EmbeddingService
from app.services.family_service import FamilyService


def _check(report, name):
    return next(c for c in report.inequalities if c.name == name)


class TestEulerSum:
    @pytest.mark.parametrize("graph, mode", [
        (FamilyService.cube(), GraphClass.GIRTH4),
        (FamilyService.grid_quadrangulation(3, 3), GraphClass.GIRTH4),
        (FamilyService.grid_quadrangulation(4, 5), GraphClass.GIRTH4),
        (FamilyService.dodecahedron(), GraphClass.GIRTH5),
        (FamilyService.cycle(7), GraphClass.GIRTH5),
    ])
    def test_connected_plane_graphs_sum_to_minus_twelve(self, graph, mode):
        assert AuditService.discharging_audit(graph, mode).euler_sum == -12

    def test_faces_that_miss_a_face_are_rejected(self, cube):
        faces = EmbeddingService.trace_faces(cube)
        partial = FaceSet(faces.faces[:-1], frozenset({0}))
        with pytest.raises(EmbeddingError, match="Euler sum is -10"):
            AuditService.discharging_audit(cube, GraphClass.GIRTH4, faces=partial)


class TestGirth4Mode:
    def test_cube_is_full_of_light_squares(self, cube):
        report = AuditService.discharging_audit(cube, GraphClass.GIRTH4)
        assert report.vertex_counts == {3: 8}
        assert report.face_counts == {4: 6}
        assert [v.predicate for v in report.violations] == ["four_face_light"] * 6
        demand = _check(report, "face_demand")
        assert (demand.lhs, demand.rhs, demand.holds) == (0, 24, False)

    def test_grid_heavy_counts(self):
        g = FamilyService.grid_quadrangulation(3, 3)
        report = AuditService.discharging_audit(g, GraphClass.GIRTH4)
        squares = [f for f in report.faces if f.length == 4]
        assert [f.heavy_vertices for f in squares] == [1, 1, 1, 1]
        assert len(report.violations) == 4

    def test_cubic_vertex_between_cubic_and_heavy(self):
        g = FamilyService.cubes_linked(2)
        report = AuditService.discharging_audit(g, GraphClass.GIRTH4)
        flagged = [v for v in report.violations if v.predicate == "deg3_deg3_deg4"]
        assert flagged
        for violation in flagged:
            (v,) = violation.vertices
            degrees = sorted(g.degree(w) for w in g.neighbors(v))
            assert g.degree(v) == 3 and 3 in degrees and 4 in degrees


class TestGirth5Mode:
    def test_dodecahedron(self, dodecahedron):
        report = AuditService.discharging_audit(dodecahedron, GraphClass.GIRTH5)
        assert report.face_counts == {5: 12}
        assert len(report.violations) == 12
        assert {v.predicate for v in report.violations} == {"five_face_light"}
        assert not _check(report, "face_demand").holds


class TestPreconditions:
    def test_needs_a_connected_graph(self):
        with pytest.raises(PreconditionError):
            AuditService.discharging_audit(FamilyService.cubes_disjoint(2), GraphClass.GIRTH4)

    def test_mode_girth_floor(self, cube):
        with pytest.raises(GraphClassMismatch):
            AuditService.discharging_audit(cube, GraphClass.GIRTH5)
