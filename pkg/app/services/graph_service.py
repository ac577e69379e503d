from collections import deque
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx
from networkx.utils import UnionFind

from app.enums import GraphClass
from app.models.graph import INFINITE_GIRTH, Girth, Graph
from app.schemas.graph_schemas import GraphInfo
from app.exceptions.errors import GraphClassMismatch, PreconditionError, RuleInapplicable
from app.services.embedding_service import EmbeddingService
from app.core.logger import get_logger

logger = get_logger("graph_service")


def shortest_cycle_in(
    adjacency: Union[Sequence[Iterable[int]], Mapping[int, Iterable[int]]], vertices: Iterable[int]
) -> Optional[List[int]]:
    """Shortest cycle of the graph restricted to `vertices`, or None for a forest.

    BFS from every root in increasing order; roots and neighbours are visited
    sorted so the returned cycle is deterministic.
    """
    alive = set(vertices)
    best: Optional[Tuple[int, int, int, Dict[int, Optional[int]]]] = None
    best_len = None
    for root in sorted(alive):
        parent: Dict[int, Optional[int]] = {root: None}
        dist = {root: 0}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if best_len is not None and 2 * dist[x] >= best_len:
                break
            for y in sorted(adjacency[x]):
                if y not in alive:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    length = dist[x] + dist[y] + 1
                    if best_len is None or length < best_len:
                        best_len = length
                        best = (root, x, y, dict(parent))
        if best_len == 3:
            break
    if best is None:
        return None
    _, x, y, parent = best
    left = [x]
    while parent[left[-1]] is not None:
        left.append(parent[left[-1]])
    right = [y]
    while parent[right[-1]] is not None:
        right.append(parent[right[-1]])
    # both paths end at the root; drop the shared tail
    while len(left) > 1 and len(right) > 1 and left[-2] == right[-2]:
        left.pop()
        right.pop()
    return list(reversed(left)) + right[:-1]


class GraphService:
    """Service for graph queries and vertex/edge surgery."""

    @staticmethod
    def to_networkx(g: Graph) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        return h

    @staticmethod
    def girth(g: Graph) -> Girth:
        cycle = shortest_cycle_in(g.adjacency, range(g.n))
        return INFINITE_GIRTH if cycle is None else len(cycle)

    @staticmethod
    def shortest_cycle(g: Graph) -> Optional[List[int]]:
        return shortest_cycle_in(g.adjacency, range(g.n))

    @staticmethod
    def connected_components(g: Graph) -> List[List[int]]:
        """Components as sorted vertex lists, ordered by smallest vertex."""
        comps = [sorted(c) for c in nx.connected_components(GraphService.to_networkx(g))]
        return sorted(comps)

    @staticmethod
    def bridges(g: Graph) -> List[Tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in nx.bridges(GraphService.to_networkx(g)))

    @staticmethod
    def is_two_edge_connected(g: Graph) -> bool:
        if g.n == 0:
            return False
        h = GraphService.to_networkx(g)
        return nx.is_connected(h) and not nx.has_bridges(h)

    @staticmethod
    def is_induced_forest(g: Graph, s: Iterable[int]) -> bool:
        s = set(s)
        for v in s:
            if not 0 <= v < g.n:
                raise PreconditionError(f"vertex {v} is not in the graph")
        forest = UnionFind(s)
        for u in s:
            for w in g.adjacency[u]:
                if u < w and w in s:
                    if forest[u] == forest[w]:
                        return False
                    forest.union(u, w)
        return True

    @staticmethod
    def delete_vertices(g: Graph, s: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
        removed = set(s)
        for v in removed:
            if not 0 <= v < g.n:
                raise PreconditionError(f"vertex {v} is not in the graph")
        survivors = [v for v in range(g.n) if v not in removed]
        relabel = {old: new for new, old in enumerate(survivors)}
        adjacency = tuple(
            frozenset(relabel[w] for w in g.adjacency[v] if w not in removed) for v in survivors
        )
        rotation, outer = EmbeddingService.splice_deleted(g, removed, relabel)
        return Graph(adjacency, rotation, outer), relabel

    @staticmethod
    def induced_subgraph(g: Graph, keep: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
        keep = set(keep)
        return GraphService.delete_vertices(g, [v for v in range(g.n) if v not in keep])

    @staticmethod
    def shortest_path(g: Graph, u: int, v: int) -> Optional[List[int]]:
        parent: Dict[int, Optional[int]] = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                path = [v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return list(reversed(path))
            for y in sorted(g.adjacency[x]):
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        return None

    @staticmethod
    def add_edge(g: Graph, u: int, v: int, guard: int) -> Graph:
        """Add uv unless a cycle shorter than `guard` would appear."""
        if u == v or not (0 <= u < g.n and 0 <= v < g.n):
            raise PreconditionError(f"cannot add edge ({u}, {v})")
        if g.has_edge(u, v):
            raise PreconditionError(f"({u}, {v}) is already an edge")
        path = GraphService.shortest_path(g, u, v)
        if path is not None and len(path) < guard:
            raise RuleInapplicable(
                f"edge ({u}, {v}) closes a {len(path)}-cycle, below {guard}", cycle=path
            )
        if g.rotation is not None:
            return EmbeddingService.insert_edge(g, u, v)
        adjacency = list(g.adjacency)
        adjacency[u] = adjacency[u] | {v}
        adjacency[v] = adjacency[v] | {u}
        return Graph(tuple(adjacency))

    @staticmethod
    def add_vertex_with_edges(
        g: Graph, nbrs: Sequence[int], placement: Optional[int] = None
    ) -> Tuple[Graph, int]:
        for w in nbrs:
            if not 0 <= w < g.n:
                raise PreconditionError(f"vertex {w} is not in the graph")
        if len(set(nbrs)) != len(nbrs):
            raise PreconditionError(f"repeated neighbour in {list(nbrs)}")
        if g.rotation is not None:
            return EmbeddingService.insert_apex(g, nbrs, placement)
        new = g.n
        adjacency = list(g.adjacency) + [frozenset(nbrs)]
        for w in nbrs:
            adjacency[w] = adjacency[w] | {new}
        return Graph(tuple(adjacency)), new

    @staticmethod
    def common_neighbors(g: Graph, u: int, v: int, exclude: Iterable[int] = ()) -> List[int]:
        return sorted((g.adjacency[u] & g.adjacency[v]) - set(exclude))

    @staticmethod
    def check_class(g: Graph, graph_class: GraphClass) -> Girth:
        """Girth of g; raises when g falls below the class floor."""
        girth = GraphService.girth(g)
        if girth < graph_class.min_girth:
            raise GraphClassMismatch(
                f"graph has girth {girth}, class {graph_class.value} needs at least {graph_class.min_girth}"
            )
        return girth

    @staticmethod
    def vertices_on_cycles(g: Graph) -> Set[int]:
        """Vertices left after repeatedly peeling degree <= 1 vertices."""
        degree = {v: g.degree(v) for v in range(g.n)}
        stack = [v for v, d in degree.items() if d <= 1]
        alive = set(range(g.n))
        while stack:
            v = stack.pop()
            if v not in alive:
                continue
            alive.discard(v)
            for w in g.adjacency[v]:
                if w in alive:
                    degree[w] -= 1
                    if degree[w] <= 1:
                        stack.append(w)
        return alive

    @staticmethod
    def info(g: Graph) -> GraphInfo:
        girth = GraphService.girth(g)
        face_count = face_lengths = None
        if g.has_rotation:
            faces = EmbeddingService.trace_faces(g)
            face_count = len(faces)
            face_lengths = {}
            for length in sorted(faces.lengths):
                face_lengths[length] = face_lengths.get(length, 0) + 1
        return GraphInfo(
            n=g.n,
            m=g.m,
            girth="infinite" if girth == INFINITE_GIRTH else girth,
            degree_counts=g.degree_counts(),
            max_degree=g.max_degree,
            components=len(GraphService.connected_components(g)),
            two_edge_connected=GraphService.is_two_edge_connected(g),
            has_rotation=g.has_rotation,
            face_count=face_count,
            face_lengths=face_lengths,
            classes=[c for c in GraphClass if girth >= c.min_girth],
        )
