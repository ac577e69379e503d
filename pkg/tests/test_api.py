import pytest

from app.services.family_service import FamilyService
from app.utils.graph_io import emit_graph

CUBE = emit_graph(FamilyService.cube())


def result_of(response):
    assert response.status_code == 200, response.text
    return response.json()["result"]


class TestBoundsRoutes:
    def test_health(self, client):
        response = client.get("/api/v1/health")
        assert response.status_code == 200
        assert response.json()["status"] == "ok"

    def test_catalog(self, client):
        ids = {entry["id"] for entry in result_of(client.get("/api/v1/bounds/catalog"))}
        assert {"comain", "main", "bcomainbis", "kowalik_nm"} <= ids

    def test_formula(self, client):
        result = result_of(client.get("/api/v1/bounds/formula/comain", params={"n": 8}))
        assert result["value"] == "5"

    def test_best_bound(self, client):
        result = result_of(client.get("/api/v1/bounds/best/girth5", params={"n": 20, "m": 30}))
        assert result["value"] == "310/23"
        assert result["ceiling"] == 14

    def test_triples(self, client):
        result = result_of(client.get("/api/v1/bounds/triples/girth4"))
        assert result["all_hold"]
        assert all(row["certificate_valid"] for row in result["rows"])

    def test_kowalik(self, client):
        result = result_of(client.get("/api/v1/bounds/kowalik", params={"k": 2}))
        assert result["violated"]
        assert result["margin"] == "3/16"

    def test_polygon_svg(self, client):
        response = client.get("/api/v1/bounds/polygon/girth4.svg")
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("image/svg+xml")
        assert "<svg" in response.text

    def test_unknown_formula(self, client):
        response = client.get("/api/v1/bounds/formula/nonsense", params={"n": 8})
        assert response.status_code == 400
        assert "unknown formula" in response.json()["error"]

    def test_unknown_class(self, client):
        response = client.get("/api/v1/bounds/triples/girth9")
        assert response.status_code == 422
        assert response.json()["error"] == "invalid request"


class TestFamilyRoutes:
    def test_cube(self, client):
        result = result_of(client.get("/api/v1/families/cube"))
        assert (result["n"], result["m"]) == (8, 12)
        assert "p forest 8 12" in result["graph"]

    def test_cycle_with_params(self, client):
        result = result_of(client.get("/api/v1/families/cycle", params={"params": 5}))
        assert result["params"] == [5]
        assert result["m"] == 5

    def test_unknown_family(self, client):
        response = client.get("/api/v1/families/tesseract")
        assert response.status_code == 400


class TestGraphRoutes:
    def test_info(self, client):
        response = client.post("/api/v1/graphs/info", json={"graph": CUBE})
        document = response.json()
        assert document["input_digest"].startswith("sha256:")
        assert document["result"]["girth"] == 4
        assert document["result"]["face_count"] == 6

    def test_exact(self, client):
        result = result_of(client.post("/api/v1/graphs/exact", json={"graph": CUBE, "tie_break": "lexicographic"}))
        assert result["forest_number"] == 5
        assert result["decycling_number"] == 3

    def test_reduce_then_verify(self, client):
        certificate = result_of(
            client.post("/api/v1/graphs/reduce", json={"graph": CUBE, "graph_class": "girth4", "threshold": 0})
        )
        assert certificate["guarantee"] == "certified"
        assert certificate["size"] == 5

        report = result_of(client.post("/api/v1/graphs/verify", json={"graph": CUBE, "certificate": certificate}))
        assert report["passed"]

    def test_verify_rejects_a_short_forest(self, client):
        certificate = result_of(
            client.post("/api/v1/graphs/reduce", json={"graph": CUBE, "graph_class": "girth4", "threshold": 0})
        )
        certificate["vertices"] = certificate["vertices"][:-1]
        report = result_of(client.post("/api/v1/graphs/verify", json={"graph": CUBE, "certificate": certificate}))
        assert not report["passed"]

    def test_audit(self, client):
        result = result_of(client.post("/api/v1/graphs/audit", json={"graph": CUBE, "mode": "girth4"}))
        assert result["euler_sum"] == -12


class TestGraphErrors:
    def test_malformed_graph(self, client):
        response = client.post("/api/v1/graphs/info", json={"graph": "p forest 2 1\ne 1 5\n"})
        assert response.status_code == 400
        assert response.json()["error"].startswith("line 2:")

    def test_class_mismatch(self, client):
        response = client.post("/api/v1/graphs/reduce", json={"graph": CUBE, "graph_class": "girth5"})
        assert response.status_code == 422
        assert "girth 4" in response.json()["error"]

    @pytest.mark.parametrize("path, body", [
        ("/api/v1/graphs/reduce", {"graph": CUBE}),
        ("/api/v1/graphs/info", {}),
        ("/api/v1/graphs/exact", {"graph": CUBE, "node_limit": 0}),
    ])
    def test_invalid_body(self, client, path, body):
        response = client.post(path, json=body)
        assert response.status_code == 422
        assert response.json()["error"] == "invalid request"
