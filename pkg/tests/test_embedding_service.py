import pytest

from app.exceptions.errors import EmbeddingError, PreconditionError
from app.models.graph import Graph
from app.services.embedding_service import EmbeddingService
from app.services.family_service import FamilyService
from app.utils.graph_io import emit_graph


class TestTraceFaces:
    def test_cube_faces(self, cube):
        faces = EmbeddingService.trace_faces(cube)
        assert faces.lengths == (4,) * 6
        assert len(faces.outer_faces) == 1

    def test_dodecahedron_faces(self, dodecahedron):
        faces = EmbeddingService.trace_faces(dodecahedron)
        assert sorted(faces.lengths) == [5] * 12
        assert all(faces.is_simple(i) for i in range(len(faces)))

    def test_grid_outer_face_is_the_boundary(self):
        g = FamilyService.grid_quadrangulation(3, 3)
        faces = EmbeddingService.trace_faces(g)
        assert sorted(faces.lengths) == [4, 4, 4, 4, 8]
        (outer,) = faces.outer_faces
        assert faces.length(outer) == 8
        assert set(EmbeddingService.outer_walk(g)) == {0, 1, 2, 3, 5, 6, 7, 8}

    def test_one_outer_face_per_component(self):
        faces = EmbeddingService.trace_faces(FamilyService.cubes_disjoint(3))
        assert len(faces) == 18
        assert len(faces.outer_faces) == 3

    def test_every_half_edge_has_one_face(self, cube):
        faces = EmbeddingService.trace_faces(cube)
        assert len(faces.face_of) == 2 * cube.m
        assert sorted(faces.faces_containing(0, 1)) == sorted(
            {faces.face_of[(0, 1)], faces.face_of[(1, 0)]}
        )

    def test_non_planar_rotation_is_rejected(self, cube):
        rotation = list(cube.rotation)
        rotation[0] = tuple(reversed(rotation[0]))
        twisted = Graph(cube.adjacency, tuple(rotation))
        with pytest.raises(EmbeddingError, match="Euler"):
            EmbeddingService.trace_faces(twisted)

    def test_missing_rotation(self, cube):
        with pytest.raises(EmbeddingError):
            EmbeddingService.trace_faces(cube.without_rotation())


class TestEdgeSurgery:
    def test_delete_edge_merges_two_faces(self, cube):
        h = EmbeddingService.delete_edge(cube, 0, 1)
        assert h.m == 11
        assert sorted(EmbeddingService.trace_faces(h).lengths) == [4, 4, 4, 4, 6]

    def test_delete_missing_edge(self, cube):
        with pytest.raises(PreconditionError):
            EmbeddingService.delete_edge(cube, 0, 2)

    def test_insert_edge_splits_a_face(self):
        g = FamilyService.grid_quadrangulation(3, 3)
        h = EmbeddingService.insert_edge(g, 0, 4)
        assert h.m == 13
        assert sorted(EmbeddingService.trace_faces(h).lengths) == [3, 3, 4, 4, 4, 8]

    def test_insert_edge_needs_a_shared_face(self):
        g = FamilyService.grid_quadrangulation(4, 4)
        with pytest.raises(EmbeddingError):
            EmbeddingService.insert_edge(g, 5, 15)

    def test_insert_edge_joins_components(self):
        g = FamilyService.cubes_disjoint(2)
        h = EmbeddingService.insert_edge(g, 0, 9)
        assert h.m == 25
        assert len(EmbeddingService.trace_faces(h)) == 11

    def test_insert_apex(self):
        h, apex = EmbeddingService.insert_apex(FamilyService.cycle(5), [0, 2])
        assert apex == 5
        assert sorted(EmbeddingService.trace_faces(h).lengths) == [4, 5, 5]


class TestCoordinates:
    def test_outer_face_of_a_drawing(self, cube):
        assert set(EmbeddingService.outer_walk(cube)) == {0, 1, 2, 3}

    def test_outerplanar_chain_has_every_vertex_outside(self):
        g = FamilyService.hosono_chain(3)
        assert set(EmbeddingService.outer_walk(g)) == set(range(g.n))

    def test_boundary_of_a_drawing_with_equal_faces(self):
        coords = [(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0), (1.0, 1.0)]
        edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2)]
        g = EmbeddingService.from_coordinates(5, edges, coords)
        walk = EmbeddingService.outer_walk(g)
        assert set(walk) == {0, 1, 2, 3}
        assert EmbeddingService.signed_area(walk, coords) > 0

        sides = EmbeddingService.cycle_sides(g, EmbeddingService.trace_faces(g), (0, 1, 2, 4))
        assert sides.interior == frozenset()
        assert sides.exterior == frozenset({3})

    @pytest.mark.parametrize("g, boundary", [
        (FamilyService.cube(), {0, 1, 2, 3}),
        (FamilyService.grid_quadrangulation(3, 3), {0, 1, 2, 3, 5, 6, 7, 8}),
        (FamilyService.cycle(6), set(range(6))),
    ])
    def test_emitted_outer_line_follows_the_drawing(self, g, boundary):
        (line,) = [l for l in emit_graph(g).splitlines() if l.startswith("f ")]
        assert {int(t) - 1 for t in line.split()[1:]} == boundary

    def test_signed_area_orientation(self):
        square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
        assert EmbeddingService.signed_area([0, 1, 2, 3], square) == 1.0
        assert EmbeddingService.signed_area([3, 2, 1, 0], square) == -1.0


class TestCycleSides:
    def test_face_boundary_does_not_separate(self, cube):
        faces = EmbeddingService.trace_faces(cube)
        sides = EmbeddingService.cycle_sides(cube, faces, (4, 5, 6, 7))
        assert not sides.is_separating
        assert sides.interior == frozenset()
        assert sides.exterior == frozenset({0, 1, 2, 3})

    def test_ring_around_the_centre(self):
        g = FamilyService.grid_quadrangulation(5, 5)
        faces = EmbeddingService.trace_faces(g)
        sides = EmbeddingService.cycle_sides(g, faces, (6, 7, 8, 13, 18, 17, 16, 11))
        assert sides.is_separating
        assert sides.interior == frozenset({12})
        assert len(sides.exterior) == 16
        assert sides.side_of(12) == "interior"
        assert sides.side_of(0) == "exterior"
        assert sides.side_of(6) is None

    def test_other_components_are_exterior(self):
        g = FamilyService.cubes_disjoint(2)
        faces = EmbeddingService.trace_faces(g)
        sides = EmbeddingService.cycle_sides(g, faces, (4, 5, 6, 7))
        assert set(range(8, 16)) <= sides.exterior

    def test_not_a_cycle(self, cube):
        faces = EmbeddingService.trace_faces(cube)
        with pytest.raises(PreconditionError):
            EmbeddingService.cycle_sides(cube, faces, (0, 1, 2))
