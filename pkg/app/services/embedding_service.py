import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

from app.models.graph import CycleSides, FaceSet, Graph, HalfEdge
from app.exceptions.errors import EmbeddingError, PreconditionError
from app.core.logger import get_logger

logger = get_logger("embedding_service")


def _component_labels(g: Graph) -> List[int]:
    """Component id per vertex; ids are the smallest vertex of each component."""
    label = [-1] * g.n
    for root in range(g.n):
        if label[root] != -1:
            continue
        label[root] = root
        stack = [root]
        while stack:
            x = stack.pop()
            for y in g.adjacency[x]:
                if label[y] == -1:
                    label[y] = root
                    stack.append(y)
    return label


class EmbeddingService:
    """Rotation-system plumbing: face tracing, surgery on embeddings, sides of cycles."""

    @staticmethod
    def planar_embedding(g: Graph) -> nx.PlanarEmbedding:
        if g.rotation is None:
            raise EmbeddingError("graph carries no rotation system")
        emb = nx.PlanarEmbedding()
        emb.add_nodes_from(range(g.n))
        emb.set_data({v: list(g.rotation[v]) for v in range(g.n) if g.rotation[v]})
        return emb

    @staticmethod
    def trace_faces(g: Graph, validate: bool = True) -> FaceSet:
        """Trace every face walk and pick one outer face per component."""
        emb = EmbeddingService.planar_embedding(g)
        marked = set()
        faces: List[Tuple[int, ...]] = []
        for v in range(g.n):
            for w in g.rotation[v]:
                if (v, w) in marked:
                    continue
                faces.append(tuple(emb.traverse_face(v, w, mark_half_edges=marked)))

        if sum(len(f) for f in faces) != 2 * g.m:
            raise EmbeddingError("face walks do not cover every half-edge exactly once")

        label = _component_labels(g)
        by_component: Dict[int, List[int]] = {}
        for i, walk in enumerate(faces):
            by_component.setdefault(label[walk[0]], []).append(i)

        if validate:
            EmbeddingService._check_euler(g, label, by_component)

        outer_faces = set()
        stored = None
        if g.outer is not None:
            stored = next(i for i, f in enumerate(faces) if g.outer in FaceSet.walk_half_edges(f))
        for comp, indices in by_component.items():
            if stored is not None and stored in indices:
                outer_faces.add(stored)
            else:
                # longest walk; earlier faces win ties
                outer_faces.add(max(indices, key=lambda i: (len(faces[i]), -i)))
        return FaceSet(tuple(faces), frozenset(outer_faces))

    @staticmethod
    def _check_euler(g: Graph, label: List[int], by_component: Dict[int, List[int]]) -> None:
        vertices: Dict[int, int] = {}
        edges: Dict[int, int] = {}
        for v in range(g.n):
            vertices[label[v]] = vertices.get(label[v], 0) + 1
            edges[label[v]] = edges.get(label[v], 0) + g.degree(v)
        for comp, face_ids in by_component.items():
            chi = vertices[comp] - edges[comp] // 2 + len(face_ids)
            if chi != 2:
                raise EmbeddingError(
                    f"rotation is not planar: component of vertex {comp} has "
                    f"n - m + f = {chi}, Euler deficit {2 - chi}"
                )

    @staticmethod
    def face_walk(g: Graph, start: HalfEdge) -> Tuple[int, ...]:
        emb = EmbeddingService.planar_embedding(g)
        return tuple(emb.traverse_face(*start))

    @staticmethod
    def outer_walk(g: Graph, faces: Optional[FaceSet] = None) -> Optional[Tuple[int, ...]]:
        """Outer face of the component holding the stored outer half-edge, starting there."""
        if g.rotation is None or g.m == 0:
            return None
        if g.outer is not None:
            return EmbeddingService.face_walk(g, g.outer)
        faces = faces or EmbeddingService.trace_faces(g, validate=False)
        first = min(faces.outer_faces, key=lambda i: (min(faces.faces[i]), i))
        return faces.faces[first]

    # --- surgery -----------------------------------------------------

    @staticmethod
    def splice_deleted(
        g: Graph, removed: Iterable[int], relabel: Dict[int, int]
    ) -> Tuple[Optional[Tuple[Tuple[int, ...], ...]], Optional[HalfEdge]]:
        """Rotation and outer half-edge of g minus the removed vertices."""
        if g.rotation is None:
            return None, None
        removed = set(removed)
        rotation = tuple(
            tuple(relabel[w] for w in g.rotation[v] if w not in removed)
            for v in sorted(relabel)
        )
        outer = None
        if g.outer is not None:
            walk = EmbeddingService.face_walk(g, g.outer)
            for x, y in FaceSet.walk_half_edges(walk):
                if x not in removed and y not in removed:
                    outer = (relabel[x], relabel[y])
                    break
        return rotation, outer

    @staticmethod
    def delete_edge(g: Graph, u: int, v: int) -> Graph:
        if not g.has_edge(u, v):
            raise PreconditionError(f"({u}, {v}) is not an edge")
        adjacency = list(g.adjacency)
        adjacency[u] = adjacency[u] - {v}
        adjacency[v] = adjacency[v] - {u}
        if g.rotation is None:
            return Graph(tuple(adjacency))
        rotation = list(g.rotation)
        rotation[u] = tuple(w for w in rotation[u] if w != v)
        rotation[v] = tuple(w for w in rotation[v] if w != u)
        outer = g.outer
        if outer in ((u, v), (v, u)):
            outer = None
            for he in FaceSet.walk_half_edges(EmbeddingService.face_walk(g, g.outer)):
                if he not in ((u, v), (v, u)):
                    outer = he
                    break
        return Graph(tuple(adjacency), tuple(rotation), outer)

    @staticmethod
    def _insert_at_corner(rotation: List[List[int]], walk: Sequence[int], a: int, b: int) -> None:
        """Put b into the rotation of a at a's first corner on the walk."""
        if not rotation[a]:
            rotation[a] = [b]
            return
        i = walk.index(a)
        s = walk[(i + 1) % len(walk)]
        order = rotation[a]
        k = order.index(s)
        order.insert(k + 1, b)

    @staticmethod
    def insert_edge(
        g: Graph,
        u: int,
        v: int,
        face: Optional[int] = None,
        faces: Optional[FaceSet] = None,
        prefer: Iterable[int] = (),
    ) -> Graph:
        """Add edge uv inside a face holding both ends (or join two components)."""
        if u == v or g.has_edge(u, v):
            raise PreconditionError(f"cannot insert edge ({u}, {v})")
        if g.rotation is None:
            raise EmbeddingError("graph carries no rotation system")
        faces = faces or EmbeddingService.trace_faces(g, validate=False)
        prefer = set(prefer)
        rotation = [list(r) for r in g.rotation]
        label = _component_labels(g)

        def ranked(candidates: List[int]) -> List[int]:
            return sorted(candidates, key=lambda i: (-len(prefer & set(faces.faces[i])), i))

        joined = label[u] == label[v] and g.degree(u) > 0 and g.degree(v) > 0
        if joined:
            if face is not None:
                if not {u, v} <= set(faces.faces[face]):
                    raise EmbeddingError(f"face {face} does not contain both {u} and {v}")
                chosen = face
            else:
                candidates = faces.faces_containing(u, v)
                if not candidates:
                    raise EmbeddingError(f"no face contains both {u} and {v}")
                chosen = ranked(candidates)[0]
            walk = faces.faces[chosen]
            EmbeddingService._insert_at_corner(rotation, walk, u, v)
            EmbeddingService._insert_at_corner(rotation, walk, v, u)
        else:
            for a, b in ((u, v), (v, u)):
                if g.degree(a) == 0:
                    rotation[a] = [b]
                    continue
                if face is not None and a in faces.faces[face]:
                    chosen = face
                else:
                    candidates = faces.faces_containing(a)
                    outer = [i for i in candidates if i in faces.outer_faces]
                    chosen = ranked(outer or candidates)[0]
                EmbeddingService._insert_at_corner(rotation, faces.faces[chosen], a, b)

        adjacency = list(g.adjacency)
        adjacency[u] = adjacency[u] | {v}
        adjacency[v] = adjacency[v] | {u}
        result = Graph(tuple(adjacency), tuple(tuple(r) for r in rotation), g.outer)
        EmbeddingService.trace_faces(result)
        return result

    @staticmethod
    def insert_apex(
        g: Graph, nbrs: Sequence[int], placement: Optional[int] = None
    ) -> Tuple[Graph, int]:
        """New vertex adjacent to nbrs, drawn inside one face of g."""
        new = g.n
        faces = EmbeddingService.trace_faces(g, validate=False)
        if placement is not None and not set(nbrs) <= set(faces.faces[placement]):
            raise EmbeddingError(f"face {placement} does not contain all of {sorted(nbrs)}")
        h = Graph(g.adjacency + (frozenset(),), g.rotation + ((),), g.outer)
        if not nbrs:
            return h, new
        if placement is None:
            first = nbrs[0]
            candidates = faces.faces_containing(first)
            placement = sorted(
                candidates, key=lambda i: (-len(set(nbrs) & set(faces.faces[i])), i)
            )[0]
        h = EmbeddingService.insert_edge(h, new, nbrs[0], face=placement, faces=faces)
        for k, b in enumerate(nbrs[1:], start=1):
            h = EmbeddingService.insert_edge(h, new, b, prefer=nbrs[k:])
        return h, new

    # --- geometry ----------------------------------------------------

    @staticmethod
    def signed_area(walk: Sequence[int], coords: Sequence[Tuple[float, float]]) -> float:
        area = 0.0
        for x, y in FaceSet.walk_half_edges(walk):
            area += coords[x][0] * coords[y][1] - coords[y][0] * coords[x][1]
        return area / 2

    @staticmethod
    def from_coordinates(
        n: int, edges: Iterable[Tuple[int, int]], coords: Sequence[Tuple[float, float]]
    ) -> Graph:
        """Straight-line drawing to rotation system; the face of largest signed area is outer."""
        plain = Graph.from_edges(n, edges)
        rotation = []
        for v in range(n):
            x0, y0 = coords[v]
            order = sorted(
                plain.adjacency[v],
                key=lambda w: -math.atan2(coords[w][1] - y0, coords[w][0] - x0),
            )
            rotation.append(tuple(order))
        g = Graph(plain.adjacency, tuple(rotation), None)
        if g.m == 0:
            return g
        faces = EmbeddingService.trace_faces(g)
        label = _component_labels(g)
        first_comp = label[next(v for v in range(n) if g.degree(v) > 0)]
        walks = [f for f in faces.faces if label[f[0]] == first_comp]
        outer_walk = max(walks, key=lambda f: EmbeddingService.signed_area(f, coords))
        return Graph(g.adjacency, g.rotation, (outer_walk[0], outer_walk[1]))

    # --- sides -------------------------------------------------------

    @staticmethod
    def cycle_sides(g: Graph, faces: FaceSet, cycle: Sequence[int]) -> CycleSides:
        cycle = tuple(cycle)
        k = len(cycle)
        if k < 3 or len(set(cycle)) != k or any(
            not g.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)
        ):
            raise PreconditionError(f"{list(cycle)} is not a cycle of the graph")

        on_cycle = set(cycle)
        cycle_edges = {frozenset((cycle[i], cycle[(i + 1) % k])) for i in range(k)}
        label = _component_labels(g)
        comp = label[cycle[0]]
        comp_faces = [i for i, f in enumerate(faces.faces) if label[f[0]] == comp]

        groups = UnionFind(comp_faces)
        for u, v in g.edges:
            if label[u] != comp or frozenset((u, v)) in cycle_edges:
                continue
            groups.union(faces.face_of[(u, v)], faces.face_of[(v, u)])
        sides = list(groups.to_sets())
        if len(sides) != 2:
            raise EmbeddingError(f"cycle {list(cycle)} splits the faces into {len(sides)} regions")

        outer = next(i for i in comp_faces if i in faces.outer_faces)
        outside = next(s for s in sides if outer in s)
        inside = next(s for s in sides if s is not outside)
        outside_vertices = {v for i in outside for v in faces.faces[i] if v not in on_cycle}
        inside_vertices = {v for i in inside for v in faces.faces[i] if v not in on_cycle}
        exterior = frozenset(
            v for v in range(g.n)
            if v not in on_cycle and (v in outside_vertices or label[v] != comp)
        )
        return CycleSides(cycle, frozenset(inside_vertices), exterior)
