from fractions import Fraction as F

import pytest

from app.enums import FormulaStatus, GraphClass
from app.exceptions.errors import CatalogError, FormulaInputError, PreconditionError
from app.models.bounds import HalfPlane, LinearForm, Triple, format_fraction
from app.services.bounds_service import BoundsService


class TestPolygons:
    def test_girth4_vertices(self):
        polygon = BoundsService.polygon(GraphClass.GIRTH4)
        assert list(polygon.vertices) == [
            (F(0), F(0)), (F(3, 4), F(1, 8)), (F(19, 22), F(7, 44)), (F(1), F(1, 4)),
        ]

    def test_girth5_vertices(self):
        polygon = BoundsService.polygon(GraphClass.GIRTH5)
        assert list(polygon.vertices) == [(F(0), F(0)), (F(15, 16), F(3, 16)), (F(1), F(5, 23))]

    def test_report_prints_reduced_fractions(self):
        report = BoundsService.polygon_report(GraphClass.GIRTH4)
        assert ["19/22", "7/44"] in report.vertices
        assert report.constraints[4].statement == "8a - 12b <= 5"

    def test_empty_region(self):
        with pytest.raises(CatalogError, match="empty"):
            BoundsService.polygon_vertices([HalfPlane(1, 0, 0, "x"), HalfPlane(-1, 0, -1, "y")])

    def test_unbounded_region(self):
        with pytest.raises(CatalogError, match="unbounded"):
            BoundsService.polygon_vertices([HalfPlane(-1, 0, 0, "x"), HalfPlane(0, -1, 0, "y")])

    def test_degenerate_half_plane(self):
        with pytest.raises(CatalogError):
            HalfPlane(0, 0, 1, "z")


class TestBestBound:
    def test_cube_meets_the_girth4_bound(self):
        value, vertex = BoundsService.best_bound(GraphClass.GIRTH4, 8, 12)
        assert value == 5
        assert vertex == (F(19, 22), F(7, 44))

    def test_dodecahedron(self):
        report = BoundsService.best_bound_report(GraphClass.GIRTH5, 20, 30)
        assert report.value == "310/23"
        assert report.ceiling == 14
        assert report.vertex == ["1", "5/23"]

    def test_sparse_graphs_use_the_steeper_vertex(self):
        value, vertex = BoundsService.best_bound(GraphClass.GIRTH4, 10, 0)
        assert (value, vertex) == (10, (F(1), F(1, 4)))

    def test_negative_input(self):
        with pytest.raises(PreconditionError):
            BoundsService.best_bound(GraphClass.GIRTH5, -1, 0)

    @pytest.mark.parametrize("graph_class", list(GraphClass))
    def test_lp_agrees_with_vertex_enumeration(self, graph_class):
        polygon = BoundsService.polygon(graph_class)
        for c_a, c_b in [(F(8), F(-12)), (F(1), F(0)), (F(11), F(-23)), (F(3), F(-5))]:
            by_vertices = max(c_a * a + c_b * b for a, b in polygon.vertices)
            assert BoundsService.lp_maximum(polygon, c_a, c_b) == by_vertices


class TestTriples:
    @pytest.mark.parametrize("graph_class", list(GraphClass))
    def test_every_catalog_triple_holds_with_its_certificate(self, graph_class):
        table = BoundsService.triple_table(graph_class)
        assert table.all_hold
        for row in table.rows:
            assert row.holds and row.certificate_valid, row.triple

    @pytest.mark.parametrize("graph_class", list(GraphClass))
    def test_lp_check_matches_vertex_check(self, graph_class):
        polygon = BoundsService.polygon(graph_class)
        for t in BoundsService.triples(graph_class):
            assert BoundsService.check_triple_lp(t, polygon) == BoundsService.check_triple(t, polygon)

    def test_tight_row(self):
        row = BoundsService.triple_row(Triple(8, 12, 5, "(5)"), GraphClass.GIRTH4)
        assert row.slack == "0"
        assert row.tight_vertices == [["19/22", "7/44"], ["1", "1/4"]]
        assert row.multipliers == {"5": "1"}

    def test_combined_certificate(self):
        multipliers, valid = BoundsService.triple_certificate(
            Triple(11, 19, 7, "4(1)+(3(3)+(4))/2"), GraphClass.GIRTH5
        )
        assert valid
        assert multipliers == {"1": F(4), "3": F(3, 2), "4": F(1, 2)}

    def test_unsound_triple(self):
        polygon = BoundsService.polygon(GraphClass.GIRTH4)
        bad = Triple(3, 5, 1)
        assert not BoundsService.check_triple(bad, polygon)
        assert not BoundsService.check_triple_lp(bad, polygon)
        assert BoundsService.triple_certificate(bad, GraphClass.GIRTH4) == ({}, False)

    def test_wrong_certificate(self):
        _, valid = BoundsService.triple_certificate(Triple(2, 5, 1, "(1)+(4)"), GraphClass.GIRTH4)
        assert not valid

    def test_malformed_proof_tag(self):
        with pytest.raises(CatalogError):
            BoundsService.triple_certificate(Triple(1, 6, 0, "(3"), GraphClass.GIRTH4)

    def test_invalid_triple(self):
        with pytest.raises(CatalogError):
            Triple(0, 1, 1)


class TestFormulas:
    @pytest.mark.parametrize("formula_id, inputs, expected", [
        ("comain", {"n": 8}, F(5)),
        ("kowalik_nm", {"n": 16, "m": 24}, F(163, 16)),
        ("alon_triangle_free", {"n": 8, "m": 12}, F(5)),
        ("borodin_planar", {"n": 10}, F(4)),
        ("alon_degree", {"n": 8, "alpha": 4, "max_degree": 3}, F(5)),
        ("bcomainbis", {"n": 20, "g": 5}, F(310, 23)),
        ("bmain", {"n": 20, "m": 30}, F(310, 23)),
        ("main", {"n": 16, "m": 24}, F(10)),
        ("fertin_planar_upper", {"n": 7}, F(4)),
    ])
    def test_values(self, formula_id, inputs, expected):
        assert BoundsService.eval_formula(formula_id, **inputs) == expected

    def test_main_takes_the_larger_piece(self):
        assert BoundsService.eval_formula("main", n=10, m=0) == 10

    def test_formula_value_report(self):
        value = BoundsService.formula_value("kowalik_nm", n=16, m=24)
        assert value.value == "163/16"
        assert value.ceiling == 11
        assert value.inputs == {"n": "16", "m": "24"}
        assert value.formula.status is FormulaStatus.REFUTED

    @pytest.mark.parametrize("formula_id, inputs", [
        ("main", {"n": 8}),
        ("nonexistent", {"n": 8}),
        ("bcomainbis", {"n": 20, "g": 4}),
        ("alon_degree", {"n": 3, "alpha": 4, "max_degree": 3}),
        ("alon_degree", {"n": 8, "alpha": 4, "max_degree": 1}),
        ("comain", {"n": -1}),
    ])
    def test_input_errors(self, formula_id, inputs):
        with pytest.raises(FormulaInputError):
            BoundsService.eval_formula(formula_id, **inputs)

    def test_catalog_ids_are_unique(self):
        ids = [entry.id for entry in BoundsService.catalog()]
        assert len(ids) == len(set(ids))
        assert {"main", "comain", "bmain", "bcomain", "kowalik_nm"} <= set(ids)


class TestCorollaries:
    @pytest.mark.parametrize("base, girth, expression", [
        ("main", 4, "(6n+7)/11"),
        ("bmain", 5, "(44n+50)/69"),
        ("bmain", 6, "(31n+30)/46"),
        ("bmain", 7, "(16n+14)/23"),
        ("alon_triangle_free", 4, "(n+2)/2"),
    ])
    def test_expressions(self, base, girth, expression):
        assert BoundsService.corollary_report(base, girth).expression == expression

    def test_matches_catalog_entries(self):
        for base, girth, formula_id in [("main", 4, "comain"), ("bmain", 5, "bcomain"),
                                        ("bmain", 6, "girth6_corollary"), ("bmain", 7, "girth7_corollary")]:
            form = BoundsService.derive_corollary(base, girth)
            for n in (10, 31, 100):
                assert form.evaluate(n) == BoundsService.eval_formula(formula_id, n=n)

    def test_non_linear_base(self):
        with pytest.raises(CatalogError):
            BoundsService.derive_corollary("alon_degree", 5)

    def test_base_without_edge_term(self):
        with pytest.raises(CatalogError):
            BoundsService.derive_corollary("borodin_planar", 5)

    def test_linear_form_printing(self):
        assert str(LinearForm(1, F(-1, 4))) == "(4n-m)/4"
        assert str(LinearForm()) == "0"
        assert format_fraction(F(14, 1)) == "14"


class TestWitnesses:
    def test_one_cube_meets_the_claim(self):
        report = BoundsService.kowalik_refutation(1)
        assert report.claimed == "5"
        assert not report.violated

    def test_two_cubes_refute_the_claim(self):
        report = BoundsService.kowalik_refutation(2)
        assert (report.n, report.m) == (16, 24)
        assert report.claimed == "163/16"
        assert report.actual == 10
        assert report.margin == "3/16"
        assert report.violated

    def test_bad_k(self):
        with pytest.raises(PreconditionError):
            BoundsService.kowalik_refutation(0)

    def test_tightness_for_girth_4_and_5(self):
        rows = BoundsService.tightness_report([4, 5])
        assert [(r.family, r.ceiling, r.forest_number, r.gap) for r in rows] == [
            ("cube", 5, 5, 0),
            ("dodecahedron", 14, 14, 0),
        ]

    @pytest.mark.slow
    def test_tightness_for_girth_6_and_7(self):
        rows = BoundsService.tightness_report([6, 7])
        assert [(r.n, r.forest_number, r.ceiling) for r in rows] == [(30, 23, 21), (42, 34, 30)]

    def test_unknown_girth(self):
        with pytest.raises(PreconditionError):
            BoundsService.tightness_report([8])
