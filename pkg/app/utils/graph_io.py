"""
Graph file reader and writer.

    c <comment>
    p forest <n> <m>
    e <u> <v>                 one line per edge, 1-based ids
    r <v> <n1> <n2> ...       clockwise rotation of v
    f <v1> <v2> ...           outer face walk, starting at the outer half-edge
"""
import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from app.models.graph import Graph
from app.exceptions.errors import EmbeddingError, InputFormatError, PreconditionError
from app.services.embedding_service import EmbeddingService

ROTATION_COMMENT = "rotation: clockwise"


@dataclass(frozen=True)
class GraphDocument:
    graph: Graph
    comments: Tuple[str, ...] = field(default_factory=tuple)


def _ints(tokens: Sequence[str], lineno: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputFormatError(f"expected integers, got {' '.join(tokens)!r}", lineno)


def parse_graph(text: str) -> GraphDocument:
    comments: List[str] = []
    n: Optional[int] = None
    m: Optional[int] = None
    edges: List[Tuple[int, int]] = []
    rotation: Dict[int, List[int]] = {}
    outer_walk: Optional[List[int]] = None
    outer_line = 0

    def vertex(token: int, lineno: int) -> int:
        if not 1 <= token <= n:
            raise InputFormatError(f"vertex {token} out of range 1..{n}", lineno)
        return token - 1

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        kind, _, rest = line.partition(" ")
        tokens = rest.split()
        if kind == "c":
            comments.append(rest.strip())
            continue
        if kind == "p":
            if n is not None:
                raise InputFormatError("duplicate problem line", lineno)
            if len(tokens) != 3 or tokens[0] != "forest":
                raise InputFormatError("problem line must read 'p forest <n> <m>'", lineno)
            n, m = _ints(tokens[1:], lineno)
            if n < 0 or m < 0:
                raise InputFormatError("negative order or size", lineno)
            continue
        if n is None:
            raise InputFormatError(f"'{kind}' line before the problem line", lineno)
        if kind == "e":
            ids = _ints(tokens, lineno)
            if len(ids) != 2:
                raise InputFormatError("edge line must have two endpoints", lineno)
            u, v = (vertex(t, lineno) for t in ids)
            edges.append((u, v))
        elif kind == "r":
            ids = _ints(tokens, lineno)
            if not ids:
                raise InputFormatError("empty rotation line", lineno)
            v = vertex(ids[0], lineno)
            if v in rotation:
                raise InputFormatError(f"second rotation for vertex {ids[0]}", lineno)
            rotation[v] = [vertex(t, lineno) for t in ids[1:]]
        elif kind == "f":
            if outer_walk is not None:
                raise InputFormatError("duplicate outer face line", lineno)
            outer_walk = [vertex(t, lineno) for t in _ints(tokens, lineno)]
            outer_line = lineno
        else:
            raise InputFormatError(f"unknown line type '{kind}'", lineno)

    if n is None:
        raise InputFormatError("missing problem line 'p forest <n> <m>'")
    if len(edges) != m:
        raise InputFormatError(f"header declares {m} edges, found {len(edges)}")

    last = max(1, len(text.splitlines()))
    try:
        plain = Graph.from_edges(n, edges)
    except PreconditionError as exc:
        raise InputFormatError(exc.message, last)

    if not rotation:
        if outer_walk is not None:
            raise InputFormatError("outer face given without a rotation", outer_line)
        return GraphDocument(plain, tuple(comments))

    for v in range(n):
        if plain.degree(v) > 0 and v not in rotation:
            raise InputFormatError(f"vertex {v + 1} has edges but no rotation line", last)
    order = [tuple(rotation.get(v, ())) for v in range(n)]
    outer = None
    if outer_walk:
        if len(outer_walk) < 2:
            raise InputFormatError("outer face walk needs at least two vertices", outer_line)
        outer = (outer_walk[0], outer_walk[1])
    try:
        g = Graph(plain.adjacency, tuple(order), outer)
        EmbeddingService.trace_faces(g)
        if outer is not None and list(EmbeddingService.face_walk(g, outer)) != outer_walk:
            raise InputFormatError("outer face line is not a face walk of the rotation", outer_line)
    except EmbeddingError as exc:
        raise InputFormatError(exc.message, last)
    return GraphDocument(g, tuple(comments))


def emit_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    comments = list(comments)
    if g.rotation is not None and ROTATION_COMMENT not in comments:
        comments.append(ROTATION_COMMENT)
    lines = [f"c {text}" if text else "c" for text in comments]
    lines.append(f"p forest {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    if g.rotation is not None:
        for v in range(g.n):
            order = list(g.rotation[v])
            if not order:
                continue
            k = order.index(min(order))
            order = order[k:] + order[:k]
            lines.append("r " + " ".join(str(x + 1) for x in [v] + order))
        walk = EmbeddingService.outer_walk(g)
        if walk:
            lines.append("f " + " ".join(str(x + 1) for x in walk))
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, Path]) -> GraphDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc.strerror}")
    return parse_graph(text)


def write_graph(path: Union[str, Path], g: Graph, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(emit_graph(g, comments), encoding="utf-8")


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()
