import pytest

from app.enums import GraphClass, Guarantee, LeafMethod, StepKind
from app.exceptions.errors import GraphClassMismatch, ReductionError
from app.services.embedding_service import EmbeddingService
from app.services.family_service import FamilyService
from app.services.reduction_engine import ReductionService
from app.services.reduction_rules import Proposal, Variant, triple


def _failed(report):
    return {c.name for c in report.checks if not c.passed}


class TestCatalog:
    def test_rule_order(self):
        assert [r.rule_id for r in ReductionService.rules(GraphClass.GIRTH4)] == [f"L{i}" for i in range(1, 16)]
        assert [r.rule_id for r in ReductionService.rules(GraphClass.GIRTH5)] == [f"B{i}" for i in range(1, 15)]

    def test_rules_without_variants(self):
        bare = [r.rule_id for c in GraphClass for r in ReductionService.rules(c) if not r.variants]
        assert bare == ["L1", "L15", "B1"]

    def test_l15_names_its_audit_predicate(self):
        rule = ReductionService.rules(GraphClass.GIRTH4)[-1]
        assert rule.rule_id == "L15"
        assert rule.anchor == "no 3-vertex adjacent to a 3-vertex and to a 4-vertex"
        assert "deg3_deg3_deg4" in rule.note


class TestFindApplication:
    def test_cube_matches_the_wide_ring(self, cube):
        faces = EmbeddingService.trace_faces(cube)
        proposal = ReductionService.find_application(cube, GraphClass.GIRTH4, faces)
        assert proposal.rule.rule_id == "L8"
        assert proposal.variant.name == "ring_wide"
        assert proposal.triple.as_tuple() == (8, 12, 5)
        assert proposal.surgery.deleted == frozenset(range(8))

    def test_face_rules_need_an_embedding(self, cube):
        assert ReductionService.find_application(cube, GraphClass.GIRTH4) is None

    def test_dodecahedron_matches_a_pentagon_rule(self, dodecahedron):
        faces = EmbeddingService.trace_faces(dodecahedron)
        proposal = ReductionService.find_application(dodecahedron, GraphClass.GIRTH5, faces)
        assert proposal is not None
        assert proposal.rule.rule_id == "B14"

class TestApplyStep:
    def test_wrong_triple_is_refused(self, cube):
        faces = EmbeddingService.trace_faces(cube)
        proposal = ReductionService.find_application(cube, GraphClass.GIRTH4, faces)
        mislabelled = Variant("mislabelled", triple(GraphClass.GIRTH4, 3, 5, 2), proposal.variant.matcher)
        with pytest.raises(ReductionError, match="needs 3"):
            ReductionService.apply_step(cube, Proposal(proposal.rule, mislabelled, proposal.surgery))

    def test_smaller_graph(self, cube):
        faces = EmbeddingService.trace_faces(cube)
        proposal = ReductionService.find_application(cube, GraphClass.GIRTH4, faces)
        surgered = ReductionService.apply_step(cube, proposal)
        assert surgered.graph.n == 0
        assert surgered.apex_ids == {}


class TestReduce:
    def test_cube(self, cube):
        certificate = ReductionService.reduce(cube, GraphClass.GIRTH4, threshold=0)
        assert certificate.size == 5
        assert certificate.guarantee is Guarantee.CERTIFIED
        assert certificate.claimed_bound == "5"
        assert certificate.bound_vertex == ["19/22", "7/44"]
        (step,) = certificate.trace
        assert (step.kind, step.rule, step.variant) == (StepKind.SURGERY, "L8", "ring_wide")
        assert [leaf.method for leaf in certificate.leaves] == [LeafMethod.EMPTY]
        assert ReductionService.verify_certificate(cube, certificate).passed

    def test_small_components_go_to_the_exact_solver(self, cube):
        certificate = ReductionService.reduce(cube, GraphClass.GIRTH4)
        assert certificate.trace == []
        assert [leaf.method for leaf in certificate.leaves] == [LeafMethod.EXACT]
        assert certificate.size == 5

    def test_cycle_leaf_drops_the_smallest_vertex(self):
        g = FamilyService.cycle(7)
        certificate = ReductionService.reduce(g, GraphClass.GIRTH5, threshold=0)
        assert certificate.vertices == [1, 2, 3, 4, 5, 6]
        assert [leaf.method for leaf in certificate.leaves] == [LeafMethod.CYCLE]
        assert certificate.guarantee is Guarantee.CERTIFIED
        assert ReductionService.verify_certificate(g, certificate).passed

    def test_forest_is_its_own_certificate(self):
        g = FamilyService.path(6)
        certificate = ReductionService.reduce(g, GraphClass.GIRTH5, threshold=0)
        assert certificate.vertices == list(range(6))
        assert certificate.trace == []

    def test_grid(self, grid):
        certificate = ReductionService.reduce(grid, GraphClass.GIRTH4, threshold=0)
        assert certificate.guarantee is Guarantee.CERTIFIED
        assert certificate.size >= 10
        assert any(step.kind is StepKind.SURGERY for step in certificate.trace)
        report = ReductionService.verify_certificate(grid, certificate)
        assert report.passed, _failed(report)

    def test_components_are_split(self):
        g = FamilyService.cubes_disjoint(2)
        certificate = ReductionService.reduce(g, GraphClass.GIRTH4, threshold=0)
        assert certificate.trace[0].kind is StepKind.SPLIT
        assert certificate.trace[0].rule == "L1"
        assert certificate.size == 10
        assert ReductionService.verify_certificate(g, certificate).passed

    def test_bridges_are_cut(self):
        g = EmbeddingService.insert_edge(FamilyService.cubes_disjoint(2), 0, 9)
        certificate = ReductionService.reduce(g, GraphClass.GIRTH4, threshold=0)
        first = certificate.trace[0]
        assert first.kind is StepKind.BRIDGE
        assert first.removed_edges == [[0, 9]]
        assert certificate.size == 10
        assert ReductionService.verify_certificate(g, certificate).passed

    def test_class_is_checked(self):
        with pytest.raises(GraphClassMismatch):
            ReductionService.reduce(FamilyService.hosono_chain(2), GraphClass.GIRTH4)
        with pytest.raises(GraphClassMismatch):
            ReductionService.reduce(FamilyService.cube(), GraphClass.GIRTH5)


class TestVerify:
    @pytest.fixture
    def certified(self, cube):
        return ReductionService.reduce(cube, GraphClass.GIRTH4, threshold=0)

    def test_dropped_vertex(self, cube, certified):
        tampered = certified.model_copy(update={"vertices": certified.vertices[1:]})
        report = ReductionService.verify_certificate(cube, tampered)
        assert not report.passed
        assert "size" in _failed(report)

    def test_cycle_in_the_forest(self, cube, certified):
        tampered = certified.model_copy(update={"vertices": list(range(8)), "size": 8})
        assert "induced_forest" in _failed(ReductionService.verify_certificate(cube, tampered))

    def test_claimed_bound(self, cube, certified):
        tampered = certified.model_copy(update={"claimed_bound": "6", "claimed_ceiling": 6})
        assert "bound" in _failed(ReductionService.verify_certificate(cube, tampered))

    def test_unsound_triple_in_the_trace(self, cube, certified):
        step = certified.trace[0].model_copy(update={"triple": [3, 5, 1]})
        tampered = certified.model_copy(update={"trace": [step]})
        assert "step_arithmetic" in _failed(ReductionService.verify_certificate(cube, tampered))

    def test_missing_leaf(self, cube, certified):
        tampered = certified.model_copy(update={"trace": []})
        assert {"vertex_accounting", "edge_accounting"} <= _failed(ReductionService.verify_certificate(cube, tampered))

    def test_other_graph(self, certified, dodecahedron):
        assert "graph" in _failed(ReductionService.verify_certificate(dodecahedron, certified))

    def test_vertex_out_of_range(self, cube, certified):
        tampered = certified.model_copy(update={"vertices": [0, 1, 2, 3, 99]})
        assert "vertex_range" in _failed(ReductionService.verify_certificate(cube, tampered))
