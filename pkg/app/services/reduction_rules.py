"""
Reduction rules: configurations, surgeries and the check a surgery must pass
before the engine applies it.

A surgery deletes a vertex set D, may add edges between survivors and new
apex vertices, and names the deleted vertices to put back into any induced
forest of the smaller graph. The check accepts a surgery only when that lift
gives an induced forest of the original graph with at least gamma more
vertices, whichever forest of the smaller graph it starts from.
"""
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from networkx.utils import UnionFind

from app.enums import GraphClass
from app.models.bounds import Triple
from app.models.graph import CycleSides, FaceSet, Graph
from app.exceptions.errors import CatalogError, EmbeddingError, PreconditionError, RuleInapplicable
from app.services.bounds_service import TRIPLES
from app.services.embedding_service import EmbeddingService
from app.services.graph_service import GraphService
from app.core.logger import get_logger

logger = get_logger("reduction_rules")


@dataclass(frozen=True)
class Apex:
    """Vertex added by a surgery; apex_neighbors name earlier apexes."""
    key: str
    neighbors: Tuple[int, ...]
    apex_neighbors: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Surgery:
    """One concrete match: what to delete, add and lift back."""
    matched: Tuple[int, ...]
    deleted: FrozenSet[int]
    base: FrozenSet[int]
    added_edges: Tuple[Tuple[int, int], ...] = ()
    apexes: Tuple[Apex, ...] = ()
    lift_if_kept: Tuple[Tuple[str, FrozenSet[int]], ...] = ()

    @property
    def delta_n(self) -> int:
        return len(self.deleted) - len(self.apexes)

    @property
    def added_count(self) -> int:
        return len(self.added_edges) + sum(len(a.neighbors) + len(a.apex_neighbors) for a in self.apexes)

    def extras(self, kept: Iterable[str]) -> FrozenSet[int]:
        kept = set(kept)
        found: Set[int] = set()
        for key, vertices in self.lift_if_kept:
            if key in kept:
                found |= vertices
        return frozenset(found)


def surgery(
    matched: Sequence[int],
    deleted: Iterable[int],
    base: Iterable[int],
    added: Sequence[Tuple[int, int]] = (),
    apexes: Sequence[Apex] = (),
    lift: Optional[Dict[str, Iterable[int]]] = None,
) -> Surgery:
    return Surgery(
        matched=tuple(matched),
        deleted=frozenset(deleted),
        base=frozenset(base),
        added_edges=tuple((x, y) for x, y in added),
        apexes=tuple(apexes),
        lift_if_kept=tuple((key, frozenset(vs)) for key, vs in (lift or {}).items()),
    )


Matcher = Callable[["RuleContext"], Iterable[Surgery]]


@dataclass(frozen=True)
class Variant:
    name: str
    triple: Triple
    matcher: Matcher = field(compare=False, repr=False)
    needs_embedding: bool = False


@dataclass(frozen=True)
class RuleSpec:
    """A reducible configuration with its proof cases as variants."""
    rule_id: str
    graph_class: GraphClass
    anchor: str
    variants: Tuple[Variant, ...] = ()
    note: str = ""

    @property
    def needs_embedding(self) -> bool:
        return any(v.needs_embedding for v in self.variants)


@dataclass(frozen=True)
class Proposal:
    rule: RuleSpec
    variant: Variant
    surgery: Surgery

    @property
    def triple(self) -> Triple:
        return self.variant.triple

    @property
    def guard(self) -> int:
        return self.rule.graph_class.min_girth


@dataclass(frozen=True)
class Surgered:
    """The smaller graph with the maps back to the graph it came from."""
    graph: Graph
    relabel: Dict[int, int]
    apex_ids: Dict[str, int]


def triple(graph_class: GraphClass, alpha: int, beta: int, gamma: int) -> Triple:
    for t in TRIPLES[graph_class]:
        if t.as_tuple() == (alpha, beta, gamma):
            return t
    raise CatalogError(f"({alpha},{beta},{gamma}) is not in the {graph_class.value} triple table")


def distinct(*vertices: Optional[int]) -> bool:
    return None not in vertices and len(set(vertices)) == len(vertices)


def _pieces(adjacency: Sequence[FrozenSet[int]], vertices: Iterable[int]) -> List[List[int]]:
    """Connected components of the subgraph induced by `vertices`."""
    remaining = set(vertices)
    found = []
    for root in sorted(remaining):
        if root not in remaining:
            continue
        remaining.discard(root)
        piece = [root]
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adjacency[x]:
                if y in remaining:
                    remaining.discard(y)
                    piece.append(y)
                    queue.append(y)
        found.append(sorted(piece))
    return found


class RuleContext:
    """Read-only view of one graph shared by every matcher of a search."""

    def __init__(self, g: Graph, graph_class: GraphClass, faces: Optional[FaceSet] = None):
        self.g = g
        self.graph_class = graph_class
        self.faces = faces
        self._cycles: Dict[int, List[Tuple[int, ...]]] = {}
        self._face_cycles: Dict[int, List[Tuple[int, ...]]] = {}
        self._sides: Dict[FrozenSet[int], CycleSides] = {}

    @property
    def has_faces(self) -> bool:
        return self.faces is not None

    def deg(self, v: int) -> int:
        return self.g.degree(v)

    def nbrs(self, v: int) -> List[int]:
        return sorted(self.g.adjacency[v])

    def adjacent(self, u: int, v: int) -> bool:
        return self.g.has_edge(u, v)

    def vertices(self, degree: Optional[int] = None, min_degree: Optional[int] = None) -> List[int]:
        return [
            v for v in range(self.g.n)
            if (degree is None or self.deg(v) == degree) and (min_degree is None or self.deg(v) >= min_degree)
        ]

    def others(self, v: int, *exclude: Optional[int]) -> List[int]:
        return sorted(self.g.adjacency[v] - set(exclude))

    def last(self, v: Optional[int], *exclude: Optional[int]) -> Optional[int]:
        """The single neighbour of v outside `exclude`, or None."""
        if v is None:
            return None
        rest = self.others(v, *exclude)
        return rest[0] if len(rest) == 1 else None

    def common(self, u: Optional[int], v: Optional[int], *exclude: Optional[int]) -> List[int]:
        if u is None or v is None:
            return []
        return GraphService.common_neighbors(self.g, u, v, [x for x in exclude if x is not None])

    def spokes(self, cycle: Sequence[int]) -> Tuple[Optional[int], ...]:
        """Neighbour of each cycle vertex off the cycle, when there is exactly one."""
        k = len(cycle)
        return tuple(self.last(v, cycle[i - 1], cycle[(i + 1) % k]) for i, v in enumerate(cycle))

    def cycles(self, k: int) -> List[Tuple[int, ...]]:
        """Every k-cycle in every starting point and direction."""
        if k not in self._cycles:
            adjacency = self.g.adjacency
            found: List[Tuple[int, ...]] = []

            def extend(path: List[int]) -> None:
                if len(path) == k:
                    if path[0] in adjacency[path[-1]]:
                        found.append(tuple(path))
                    return
                for w in sorted(adjacency[path[-1]]):
                    if w not in path:
                        path.append(w)
                        extend(path)
                        path.pop()

            for v in range(self.g.n):
                extend([v])
            self._cycles[k] = found
        return self._cycles[k]

    def face_cycles(self, k: int) -> List[Tuple[int, ...]]:
        """Boundaries of simple k-faces in every starting point and direction."""
        if self.faces is None:
            return []
        if k not in self._face_cycles:
            found = set()
            for i, walk in enumerate(self.faces.faces):
                if len(walk) != k or not self.faces.is_simple(i):
                    continue
                for ring in (walk, tuple(reversed(walk))):
                    for s in range(k):
                        found.add(ring[s:] + ring[:s])
            self._face_cycles[k] = sorted(found)
        return self._face_cycles[k]

    def cubic_cycles(self, k: int, faces_only: bool = False) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """k-cycles of 3-vertices whose spokes are distinct and off the cycle."""
        for c in self.face_cycles(k) if faces_only else self.cycles(k):
            if all(self.deg(v) == 3 for v in c):
                u = self.spokes(c)
                if distinct(*c, *u):
                    yield c, u

    def sides(self, cycle: Sequence[int]) -> CycleSides:
        if self.faces is None:
            raise EmbeddingError("cycle sides need a rotation system")
        key = frozenset(cycle)
        if key not in self._sides:
            self._sides[key] = EmbeddingService.cycle_sides(self.g, self.faces, cycle)
        return self._sides[key]

    def is_separating(self, cycle: Sequence[int]) -> bool:
        return self.has_faces and self.sides(cycle).is_separating

    def separates(self, cycle: Sequence[int], x: Optional[int], y: Optional[int]) -> bool:
        if x is None or y is None or not self.has_faces:
            return False
        sides = self.sides(cycle)
        sx, sy = sides.side_of(x), sides.side_of(y)
        return sx is not None and sy is not None and sx != sy


# --- configurations shared by both classes -----------------------------

def heavy_vertex(min_degree: int) -> Matcher:
    def match(ctx: RuleContext) -> Iterator[Surgery]:
        for v in ctx.vertices(min_degree=min_degree):
            yield surgery((v,), {v}, ())
    return match


def cubic_beside_heavy(min_heavy: int) -> Matcher:
    """3-vertex v next to a heavy w; its other neighbours get joined."""
    def match(ctx: RuleContext) -> Iterator[Surgery]:
        for v in ctx.vertices(degree=3):
            for w in ctx.nbrs(v):
                if ctx.deg(w) < min_heavy:
                    continue
                x, y = ctx.others(v, w)
                yield surgery((v, w, x, y), {v, w}, {v}, added=[(x, y)])
    return match


def light_beside_heavy(min_heavy: int) -> Matcher:
    def match(ctx: RuleContext) -> Iterator[Surgery]:
        for v in ctx.vertices(degree=2):
            for w in ctx.nbrs(v):
                if ctx.deg(w) >= min_heavy:
                    yield surgery((v, w), {v, w}, {v})
    return match


def cubic_between_lights(ctx: RuleContext) -> Iterator[Surgery]:
    for v in ctx.vertices(degree=3):
        lights = [u for u in ctx.nbrs(v) if ctx.deg(u) == 2]
        for u, w in combinations(lights, 2):
            yield surgery((v, u, w), {u, v, w}, {u, w})


def light_path_end(ctx: RuleContext) -> Iterator[Surgery]:
    """2-vertex v with a 2-neighbour u and a 3-neighbour w."""
    for v in ctx.vertices(degree=2):
        for u in ctx.nbrs(v):
            w = ctx.last(v, u)
            if ctx.deg(u) == 2 and w is not None and ctx.deg(w) == 3:
                yield surgery((v, u, w), {u, v, w}, {u, v})


def light_bypass(ctx: RuleContext) -> Iterator[Surgery]:
    """2-vertex between two 3-vertices, replaced by an edge."""
    for v in ctx.vertices(degree=2):
        u, w = ctx.nbrs(v)
        if ctx.deg(u) == 3 and ctx.deg(w) == 3:
            yield surgery((v, u, w), {v}, {v}, added=[(u, w)])


def cubic_face_apexes(ctx: RuleContext) -> Iterator[Surgery]:
    """5-face of 3-vertices contracted to two adjacent apexes."""
    for c, u in ctx.cubic_cycles(5, faces_only=True):
        v0, v1, v2, v3, _ = c
        yield surgery(
            c, c, {v0, v3},
            apexes=[Apex("x", (u[0], u[1])), Apex("y", (u[2], u[3]), ("x",))],
            lift={"x": {v1}, "y": {v2}},
        )


# --- soundness check ---------------------------------------------------

class SurgeryCheck:
    """Validates a surgery against its triple and builds the smaller graph."""

    @staticmethod
    def removed_edges(g: Graph, deleted: FrozenSet[int]) -> List[Tuple[int, int]]:
        return [(u, v) for u, v in g.edges if u in deleted or v in deleted]

    @staticmethod
    def well_formed(g: Graph, s: Surgery) -> bool:
        if not s.deleted or not s.base <= s.deleted:
            return False
        if any(not 0 <= v < g.n for v in s.deleted):
            return False
        def survivors(vs: Iterable[int]) -> bool:
            return all(0 <= w < g.n and w not in s.deleted for w in vs)

        for x, y in s.added_edges:
            if x == y or not survivors((x, y)) or g.has_edge(x, y):
                return False
        keys: List[str] = []
        for apex in s.apexes:
            if apex.key in keys or not survivors(apex.neighbors):
                return False
            if any(k not in keys for k in apex.apex_neighbors):
                return False
            keys.append(apex.key)
        return all(key in keys and extra <= s.deleted for key, extra in s.lift_if_kept)

    @staticmethod
    def accounting(g: Graph, s: Surgery) -> Tuple[int, int]:
        return s.delta_n, len(SurgeryCheck.removed_edges(g, s.deleted)) - s.added_count

    @staticmethod
    def kept_subsets(s: Surgery) -> Iterator[Tuple[str, ...]]:
        keys = [a.key for a in s.apexes]
        for size in range(len(keys) + 1):
            yield from combinations(keys, size)

    @staticmethod
    def build(g: Graph, s: Surgery, guard: int) -> Surgered:
        """Delete, then add guarded edges, then apexes; raises when the class would be left."""
        h, relabel = GraphService.delete_vertices(g, s.deleted)
        for x, y in s.added_edges:
            h = GraphService.add_edge(h, relabel[x], relabel[y], guard)
        apex_ids: Dict[str, int] = {}
        for apex in s.apexes:
            nbrs = [relabel[w] for w in apex.neighbors] + [apex_ids[k] for k in apex.apex_neighbors]
            h, new = GraphService.add_vertex_with_edges(h, nbrs)
            apex_ids[apex.key] = new
        if s.apexes and GraphService.girth(h) < guard:
            raise RuleInapplicable(f"apex vertices close a cycle shorter than {guard}")
        return Surgered(h, relabel, apex_ids)

    @staticmethod
    def _apex_group(h: Graph, available: Set[int], attach: Set[int]) -> Optional[FrozenSet[int]]:
        """Smallest connected set of kept apexes whose neighbourhood covers `attach`."""
        pool = sorted(available)
        for size in range(1, len(pool) + 1):
            for group in combinations(pool, size):
                reach = set().union(*(h.adjacency[a] for a in group))
                if attach <= reach and len(_pieces(h.adjacency, group)) == 1:
                    return frozenset(group)
        return None

    @staticmethod
    def _roles(g: Graph, s: Surgery, surgered: Surgered, kept: Sequence[str], chosen: FrozenSet[int],
               component: Dict[int, int]) -> bool:
        """Every lifted tree must stand in for an added edge, a kept apex group, or join separate components."""
        relabel = surgered.relabel
        edges = [frozenset((relabel[x], relabel[y])) for x, y in s.added_edges]
        apexes = {surgered.apex_ids[k] for k in kept}
        joined = UnionFind()
        for piece in _pieces(g.adjacency, chosen):
            hits: Dict[int, int] = {}
            for v in piece:
                for w in g.adjacency[v]:
                    if w not in s.deleted:
                        hits[relabel[w]] = hits.get(relabel[w], 0) + 1
            if any(count > 1 for count in hits.values()):
                return False
            attach = set(hits)
            if len(attach) <= 1:
                continue
            edge = next((e for e in edges if attach <= e), None)
            if edge is not None:
                edges.remove(edge)
                continue
            group = SurgeryCheck._apex_group(surgered.graph, apexes, attach)
            if group is not None:
                apexes -= group
                continue
            roots = [joined[component[w]] for w in attach]
            if len(set(roots)) != len(roots):
                return False
            joined.union(*roots)
        return True

    @staticmethod
    def lift_sets_hold(g: Graph, s: Surgery, t: Triple) -> bool:
        for kept in SurgeryCheck.kept_subsets(s):
            chosen = s.base | s.extras(kept)
            if len(chosen) - len(kept) < t.gamma or not GraphService.is_induced_forest(g, chosen):
                return False
        return True

    @staticmethod
    def validate(g: Graph, s: Surgery, t: Triple, guard: int) -> Optional[Surgered]:
        """The smaller graph when the surgery is sound for the triple, else None."""
        if not SurgeryCheck.well_formed(g, s):
            return None
        delta_n, delta_m = SurgeryCheck.accounting(g, s)
        if delta_n != t.alpha or delta_m < t.beta:
            return None
        if not SurgeryCheck.lift_sets_hold(g, s, t):
            return None
        try:
            surgered = SurgeryCheck.build(g, s, guard)
        except (RuleInapplicable, EmbeddingError, PreconditionError) as exc:
            logger.debug(f"Surgery at {list(s.matched)} refused: {exc.message}")
            return None
        component = {}
        for i, comp in enumerate(GraphService.connected_components(surgered.graph)):
            for v in comp:
                component[v] = i
        for kept in SurgeryCheck.kept_subsets(s):
            chosen = s.base | s.extras(kept)
            if not SurgeryCheck._roles(g, s, surgered, kept, chosen, component):
                return None
        return surgered

    @staticmethod
    def lift(s: Surgery, surgered: Surgered, forest: Iterable[int]) -> Set[int]:
        """Forest of the smaller graph mapped back, plus the lifted deleted vertices."""
        inverse = {new: old for old, new in surgered.relabel.items()}
        apex_keys = {v: k for k, v in surgered.apex_ids.items()}
        forest = set(forest)
        kept = [apex_keys[v] for v in forest if v in apex_keys]
        return {inverse[v] for v in forest if v in inverse} | s.base | s.extras(kept)
