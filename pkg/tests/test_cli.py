import io
import json

import pytest

from app.cli import EXIT_CHECK_FAILED, EXIT_OK, main
from app.services.family_service import FamilyService
from app.utils.graph_io import emit_graph


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def envelope(out):
    document = json.loads(out)
    assert set(document) == {"command", "input_digest", "tool_version", "result"}
    return document


@pytest.fixture
def cube_file(tmp_path):
    path = tmp_path / "cube.graph"
    path.write_text(emit_graph(FamilyService.cube()), encoding="utf-8")
    return str(path)


class TestGen:
    def test_to_file(self, capsys, tmp_path):
        target = tmp_path / "d.graph"
        code, out, _ = run(capsys, "gen", "dodecahedron", "-o", str(target))
        assert code == EXIT_OK
        result = envelope(out)["result"]
        assert (result["n"], result["m"]) == (20, 30)
        assert target.read_text(encoding="utf-8").startswith("c dodecahedron")

    def test_to_stdout(self, capsys):
        code, out, _ = run(capsys, "gen", "cubes_disjoint", "2")
        assert code == EXIT_OK
        assert "p forest 16 24" in out.splitlines()

    def test_unknown_family(self, capsys):
        code, _, err = run(capsys, "gen", "tesseract")
        assert code == 2
        assert err.startswith("error: unknown family")


class TestQueries:
    def test_info(self, capsys, cube_file):
        code, out, _ = run(capsys, "info", cube_file)
        document = envelope(out)
        assert code == EXIT_OK
        assert document["command"] == "info"
        assert document["input_digest"].startswith("sha256:")
        assert document["result"]["girth"] == 4

    def test_formula(self, capsys):
        code, out, _ = run(capsys, "bound", "--formula", "comain", "--n", "8")
        assert code == EXIT_OK
        assert envelope(out)["result"]["value"] == "5"

    def test_best_bound_from_file(self, capsys, cube_file):
        code, out, _ = run(capsys, "bound", cube_file, "--best", "girth4")
        assert envelope(out)["result"]["ceiling"] == 5

    def test_best_bound_needs_sizes(self, capsys):
        code, _, err = run(capsys, "bound", "--best", "girth5", "--n", "20")
        assert code == 2
        assert "--best" in err

    def test_catalog(self, capsys):
        code, out, _ = run(capsys, "bound", "--catalog")
        ids = [entry["id"] for entry in envelope(out)["result"]]
        assert "kowalik_nm" in ids

    def test_exact(self, capsys, cube_file):
        code, out, _ = run(capsys, "exact", cube_file, "--tie-break", "lexicographic")
        result = envelope(out)["result"]
        assert code == EXIT_OK
        assert result["forest_number"] == 5
        assert result["proven_optimal"]

    def test_exact_all(self, capsys, tmp_path):
        path = tmp_path / "c5.graph"
        path.write_text(emit_graph(FamilyService.cycle(5)), encoding="utf-8")
        code, out, _ = run(capsys, "exact", str(path), "--all")
        assert envelope(out)["result"]["count"] == 5

    def test_audit(self, capsys, cube_file):
        code, out, _ = run(capsys, "audit", cube_file, "--mode", "girth4")
        result = envelope(out)["result"]
        assert result["euler_sum"] == -12
        assert len(result["violations"]) == 6

    def test_corollary(self, capsys):
        code, out, _ = run(capsys, "corollary", "--base", "main", "--g", "4")
        assert envelope(out)["result"]["expression"] == "(6n+7)/11"

    def test_triples(self, capsys):
        code, out, _ = run(capsys, "triples", "--class", "girth5")
        assert code == EXIT_OK
        assert envelope(out)["result"]["all_hold"]

    def test_tightness(self, capsys):
        code, out, _ = run(capsys, "tightness", "--girths", "4")
        (row,) = envelope(out)["result"]
        assert row["gap"] == 0


class TestReduceAndVerify:
    def test_certificate_round(self, capsys, cube_file, tmp_path):
        certificate = tmp_path / "cube.cert.json"
        code, out, _ = run(capsys, "reduce", cube_file, "--class", "girth4", "--threshold", "0",
                           "-o", str(certificate))
        assert code == EXIT_OK
        assert envelope(out)["result"]["guarantee"] == "certified"
        assert json.loads(certificate.read_text(encoding="utf-8"))["command"] == "reduce"

        code, out, _ = run(capsys, "verify", cube_file, str(certificate))
        assert code == EXIT_OK
        assert envelope(out)["result"]["passed"]

    def test_tampered_certificate_fails(self, capsys, cube_file, tmp_path):
        code, out, _ = run(capsys, "reduce", cube_file, "--class", "girth4", "--threshold", "0")
        result = envelope(out)["result"]
        result["vertices"] = result["vertices"][:-1]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(result), encoding="utf-8")

        code, out, _ = run(capsys, "verify", cube_file, str(path))
        assert code == EXIT_CHECK_FAILED
        assert not envelope(out)["result"]["passed"]

    def test_certificate_that_is_not_json(self, capsys, cube_file, tmp_path):
        path = tmp_path / "junk.json"
        path.write_text("{not json", encoding="utf-8")
        code, _, err = run(capsys, "verify", cube_file, str(path))
        assert code == 2
        assert "not JSON" in err

    def test_wrong_class(self, capsys, cube_file):
        code, _, err = run(capsys, "reduce", cube_file, "--class", "girth5")
        assert code == 2
        assert "girth 4" in err


class TestWitnesses:
    def test_kowalik_refuted_by_two_cubes(self, capsys):
        code, out, _ = run(capsys, "refute-kowalik", "--k", "2")
        result = envelope(out)["result"]
        assert code == EXIT_OK
        assert result["claimed"] == "163/16"
        assert result["actual"] == 10

    def test_kowalik_holds_on_one_cube(self, capsys):
        code, _, _ = run(capsys, "refute-kowalik", "--k", "1")
        assert code == EXIT_CHECK_FAILED

    def test_plot_polygon(self, capsys, tmp_path):
        target = tmp_path / "girth4.svg"
        code, out, _ = run(capsys, "plot-polygon", "--class", "girth4", "-o", str(target))
        assert code == EXIT_OK
        assert envelope(out)["result"]["path"] == str(target)
        assert "(7/44, 19/22)" in target.read_text(encoding="utf-8")


class TestInputErrors:
    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "info", str(tmp_path / "absent.graph"))
        assert code == 2
        assert err.startswith("error: cannot read")

    def test_malformed_graph(self, capsys, tmp_path):
        path = tmp_path / "bad.graph"
        path.write_text("p forest 2 1\ne 1 5\n", encoding="utf-8")
        code, _, err = run(capsys, "info", str(path))
        assert code == 2
        assert "line 2" in err

    def test_standard_input(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(emit_graph(FamilyService.cycle(6))))
        code, out, _ = run(capsys, "info", "-")
        assert envelope(out)["result"]["girth"] == 6
