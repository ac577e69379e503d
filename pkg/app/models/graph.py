"""
Immutable graph, face and cycle-side values.

Vertices are dense integers 0..n-1. A rotation, when present, lists each
vertex's neighbours in clockwise order; the face walk leaving half-edge
(u, v) continues with (v, w) where w precedes u in the rotation of v.
"""
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from app.exceptions.errors import EmbeddingError, PreconditionError

Vertex = int
HalfEdge = Tuple[int, int]
Girth = Union[int, float]

INFINITE_GIRTH: float = math.inf


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with an optional rotation system."""
    adjacency: Tuple[FrozenSet[int], ...]
    rotation: Optional[Tuple[Tuple[int, ...], ...]] = None
    outer: Optional[HalfEdge] = None
    m: int = field(init=False, compare=False)

    def __post_init__(self):
        degree_sum = 0
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise PreconditionError(f"loop at vertex {v}")
            for w in nbrs:
                if not 0 <= w < len(self.adjacency) or v not in self.adjacency[w]:
                    raise PreconditionError(f"adjacency of {v} and {w} is not symmetric")
            degree_sum += len(nbrs)
        object.__setattr__(self, "m", degree_sum // 2)

        if self.rotation is not None:
            if len(self.rotation) != len(self.adjacency):
                raise EmbeddingError("rotation does not cover every vertex")
            for v, order in enumerate(self.rotation):
                if len(order) != len(self.adjacency[v]) or set(order) != self.adjacency[v]:
                    raise EmbeddingError(f"rotation of vertex {v} is not a permutation of its neighbours")
        if self.outer is not None:
            u, v = self.outer
            if self.rotation is None or not 0 <= u < self.n or v not in self.adjacency[u]:
                raise EmbeddingError(f"outer half-edge {self.outer} is not an edge of the embedding")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int]],
        rotation: Optional[Sequence[Sequence[int]]] = None,
        outer: Optional[HalfEdge] = None,
    ) -> "Graph":
        adj: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for n={n}")
            if v in adj[u]:
                raise PreconditionError(f"parallel edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        rot = None if rotation is None else tuple(tuple(r) for r in rotation)
        return cls(tuple(frozenset(a) for a in adj), rot, outer)

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls(tuple(frozenset() for _ in range(n)), tuple(() for _ in range(n)), None)

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def has_rotation(self) -> bool:
        return self.rotation is not None

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @cached_property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(
            (u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v
        )

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def degree_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for nbrs in self.adjacency:
            counts[len(nbrs)] = counts.get(len(nbrs), 0) + 1
        return dict(sorted(counts.items()))

    def without_rotation(self) -> "Graph":
        return Graph(self.adjacency, None, None)


@dataclass(frozen=True)
class FaceSet:
    """Faces traced from a rotation system, each a closed walk of vertices."""
    faces: Tuple[Tuple[int, ...], ...]
    outer_faces: FrozenSet[int] = frozenset()

    def __len__(self) -> int:
        return len(self.faces)

    def length(self, index: int) -> int:
        return len(self.faces[index])

    @property
    def lengths(self) -> Tuple[int, ...]:
        return tuple(len(f) for f in self.faces)

    @staticmethod
    def walk_half_edges(walk: Sequence[int]) -> List[HalfEdge]:
        return [(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk))]

    def half_edges(self, index: int) -> List[HalfEdge]:
        return self.walk_half_edges(self.faces[index])

    @cached_property
    def face_of(self) -> Dict[HalfEdge, int]:
        owner: Dict[HalfEdge, int] = {}
        for i in range(len(self.faces)):
            for he in self.half_edges(i):
                owner[he] = i
        return owner

    def faces_containing(self, *vertices: int) -> List[int]:
        wanted = set(vertices)
        return [i for i, f in enumerate(self.faces) if wanted <= set(f)]

    def is_simple(self, index: int) -> bool:
        walk = self.faces[index]
        return len(walk) >= 3 and len(set(walk)) == len(walk)


@dataclass(frozen=True)
class CycleSides:
    """Partition of the vertex set by a cycle of a plane graph."""
    cycle: Tuple[int, ...]
    interior: FrozenSet[int]
    exterior: FrozenSet[int]

    @property
    def is_separating(self) -> bool:
        return bool(self.interior) and bool(self.exterior)

    def side_of(self, v: int) -> Optional[str]:
        if v in self.interior:
            return "interior"
        if v in self.exterior:
            return "exterior"
        return None
