"""
Every surgery the check accepts on the sample graphs must lift any forest of
the smaller graph to a forest of the original with the promised gain.
"""
import pytest

from app.enums import GraphClass
from app.models.bounds import Triple
from app.services.bounds_service import BoundsService
from app.services.embedding_service import EmbeddingService
from app.services.exact_solver_service import ExactSolverService
from app.services.family_service import FamilyService
from app.services.graph_service import GraphService
from app.services.reduction_engine import ReductionService
from app.services.reduction_rules import Apex, RuleContext, SurgeryCheck, surgery

SAMPLES = {
    GraphClass.GIRTH4: {
        "cube": FamilyService.cube(),
        "cube_minus_edge": FamilyService.cube_minus_edge_disjoint(1),
        "grid_4x4": FamilyService.grid_quadrangulation(4, 4),
        "grid_3x5": FamilyService.grid_quadrangulation(3, 5),
        "cubes_linked": FamilyService.cubes_linked(2),
    },
    GraphClass.GIRTH5: {
        "dodecahedron": FamilyService.dodecahedron(),
        "dodecahedron_minus_edge": EmbeddingService.delete_edge(FamilyService.dodecahedron(), 0, 1),
        "decagon_with_chord": EmbeddingService.insert_edge(FamilyService.cycle(10), 0, 5),
    },
}

CASES = [(graph_class, name) for graph_class, graphs in SAMPLES.items() for name in graphs]


def _accepted(g, graph_class):
    ctx = RuleContext(g, graph_class, EmbeddingService.trace_faces(g))
    for rule in ReductionService.rules(graph_class):
        for variant in rule.variants:
            for s in set(variant.matcher(ctx)):
                surgered = SurgeryCheck.validate(g, s, variant.triple, graph_class.min_girth)
                if surgered is not None:
                    yield rule, variant, s, surgered


@pytest.mark.parametrize("graph_class", list(GraphClass))
def test_variant_triples_are_sound(graph_class):
    polygon = BoundsService.polygon(graph_class)
    table = set(BoundsService.triples(graph_class))
    for rule in ReductionService.rules(graph_class):
        assert rule.graph_class is graph_class
        for variant in rule.variants:
            assert variant.triple in table, (rule.rule_id, variant.name)
            assert BoundsService.check_triple(variant.triple, polygon)


@pytest.mark.parametrize("graph_class, name", CASES)
def test_accepted_surgeries_lift_with_the_promised_gain(graph_class, name):
    g = SAMPLES[graph_class][name]
    accepted = list(_accepted(g, graph_class))
    assert accepted, f"no rule applies to {name}"
    for rule, variant, s, surgered in accepted:
        label = f"{rule.rule_id}/{variant.name} at {s.matched}"
        t = variant.triple
        h = surgered.graph
        assert g.n - h.n == t.alpha, label
        assert g.m - h.m >= t.beta, label
        assert GraphService.girth(h) >= graph_class.min_girth, label

        forests = [
            ExactSolverService.forest_number_exact(h).witness,
            sorted(set(range(h.n)) - ExactSolverService.greedy_decycling(h)),
            [],
        ]
        for forest in forests:
            lifted = SurgeryCheck.lift(s, surgered, forest)
            assert GraphService.is_induced_forest(g, lifted), label
            assert len(lifted) >= len(forest) + t.gamma, label


@pytest.mark.parametrize("graph_class, name", CASES)
def test_mutated_triples_are_refused(graph_class, name):
    g = SAMPLES[graph_class][name]
    guard = graph_class.min_girth
    for _, variant, s, _ in _accepted(g, graph_class):
        t = variant.triple
        greedy = Triple(t.alpha, t.beta, len(s.base) + len(s.extras(a.key for a in s.apexes)) + 1)
        assert SurgeryCheck.validate(g, s, greedy, guard) is None
        assert SurgeryCheck.validate(g, s, Triple(t.alpha + 1, t.beta, t.gamma), guard) is None
        assert SurgeryCheck.validate(g, s, Triple(t.alpha, t.beta + s.added_count + g.m, t.gamma), guard) is None


class TestRefusals:
    def test_lifted_cycle(self):
        square = FamilyService.cycle(4)
        s = surgery((0, 1, 2, 3), {0, 1, 2, 3}, {0, 1, 2, 3})
        assert SurgeryCheck.validate(square, s, Triple(4, 4, 2), 4) is None

    def test_vertex_hanging_on_one_component(self, cube):
        # putting a 3-vertex back without an edge or apex to stand in for it closes a cycle
        s = surgery((0,), {0}, {0})
        assert SurgeryCheck.validate(cube, s, Triple(1, 1, 1), 4) is None

    def test_apex_closing_a_triangle(self, cube):
        s = surgery((4, 5, 6, 7), {4, 5, 6, 7}, {4, 6}, apexes=[Apex("x", (0, 1, 2))], lift={"x": {5}})
        assert SurgeryCheck.validate(cube, s, Triple(3, 5, 2), 4) is None

    def test_base_outside_the_deleted_set(self, cube):
        s = surgery((0,), {0}, {0, 1})
        assert not SurgeryCheck.well_formed(cube, s)

    def test_lift_of_unknown_apex(self, cube):
        s = surgery((0,), {0}, {0}, lift={"y": {0}})
        assert not SurgeryCheck.well_formed(cube, s)
