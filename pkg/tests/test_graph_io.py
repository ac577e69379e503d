import pytest

from app.exceptions.errors import InputFormatError
from app.services.embedding_service import EmbeddingService
from app.services.family_service import DATA_DIR
from app.utils.graph_io import digest, emit_graph, parse_graph, read_graph, write_graph

SQUARE = """c a plain 4-cycle
p forest 4 4
e 1 2
e 2 3
e 3 4
e 4 1
"""


def _normalised(rotation):
    """Each cyclic order started at its smallest neighbour."""
    result = []
    for order in rotation:
        k = order.index(min(order))
        result.append(order[k:] + order[:k])
    return result


def test_plain_graph():
    doc = parse_graph(SQUARE)
    g = doc.graph
    assert (g.n, g.m) == (4, 4)
    assert not g.has_rotation
    assert doc.comments == ("a plain 4-cycle",)


def test_embedded_graph_survives_a_write(tmp_path, cube):
    path = tmp_path / "cube.graph"
    write_graph(path, cube, ["cube"])
    g = read_graph(path).graph
    assert g.adjacency == cube.adjacency
    assert _normalised(g.rotation) == _normalised(cube.rotation)
    assert EmbeddingService.outer_walk(g) == EmbeddingService.outer_walk(cube)


def test_emitted_text_lists_rotations_and_outer_face(cube):
    text = emit_graph(cube)
    lines = text.splitlines()
    assert "c rotation: clockwise" in lines
    assert "p forest 8 12" in lines
    assert sum(1 for line in lines if line.startswith("r ")) == 8
    assert sum(1 for line in lines if line.startswith("f ")) == 1


def test_bundled_fixture():
    doc = read_graph(DATA_DIR / "girth6_fixture.graph")
    assert (doc.graph.n, doc.graph.m) == (30, 42)
    assert doc.graph.has_rotation


@pytest.mark.parametrize("text, message", [
    ("e 1 2\n", "before the problem line"),
    ("p forest 2 1\np forest 2 1\ne 1 2\n", "duplicate problem line"),
    ("p graph 2 1\ne 1 2\n", "p forest"),
    ("p forest 2 2\ne 1 2\n", "header declares 2 edges"),
    ("p forest 2 1\ne 1 3\n", "out of range"),
    ("p forest 2 1\ne 1 x\n", "expected integers"),
    ("p forest 2 1\nq 1 2\n", "unknown line type"),
    ("p forest 2 1\ne 1 1\n", "loop"),
    ("p forest 3 2\ne 1 2\ne 2 1\n", "parallel"),
    ("c only comments\n", "missing problem line"),
])
def test_malformed_files(text, message):
    with pytest.raises(InputFormatError, match=message):
        parse_graph(text)


def test_error_carries_the_line_number():
    with pytest.raises(InputFormatError) as info:
        parse_graph("p forest 4 1\nc fine\ne 1 9\n")
    assert info.value.line == 3
    assert info.value.message.startswith("line 3:")


class TestRotationLines:
    def test_rotation_must_permute_neighbours(self):
        text = SQUARE + "r 1 2 3\nr 2 1 3\nr 3 2 4\nr 4 3 1\n"
        with pytest.raises(InputFormatError):
            parse_graph(text)

    def test_every_edge_end_needs_a_rotation(self):
        with pytest.raises(InputFormatError, match="no rotation line"):
            parse_graph(SQUARE + "r 1 2 4\nr 2 1 3\nr 3 2 4\n")

    def test_second_rotation_for_a_vertex(self):
        with pytest.raises(InputFormatError, match="second rotation"):
            parse_graph(SQUARE + "r 1 2 4\nr 1 4 2\n")

    def test_outer_face_without_rotation(self):
        with pytest.raises(InputFormatError, match="without a rotation"):
            parse_graph(SQUARE + "f 1 2 3 4\n")

    def test_outer_face_must_be_a_face_walk(self):
        text = SQUARE + "r 1 2 4\nr 2 1 3\nr 3 2 4\nr 4 3 1\nf 1 2 4 3\n"
        with pytest.raises(InputFormatError, match="not a face walk"):
            parse_graph(text)

    def test_non_planar_rotation(self, cube):
        rotation = list(cube.rotation)
        rotation[0] = tuple(reversed(rotation[0]))
        text = emit_graph(cube.without_rotation())
        text += "".join(
            "r " + " ".join(str(x + 1) for x in [v, *order]) + "\n" for v, order in enumerate(rotation)
        )
        with pytest.raises(InputFormatError, match="Euler"):
            parse_graph(text)


def test_digest_is_stable():
    assert digest(SQUARE) == digest(SQUARE)
    assert digest(SQUARE).startswith("sha256:")
    assert digest(SQUARE) != digest(SQUARE + "c\n")
