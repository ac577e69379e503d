import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from app.enums import FamilyName
from app.models.graph import INFINITE_GIRTH, Girth, Graph
from app.exceptions.errors import CatalogError, PreconditionError
from app.services.embedding_service import EmbeddingService
from app.services.graph_service import GraphService
from app.utils.graph_io import read_graph
from app.core.logger import get_logger

logger = get_logger("family_service")

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

Coords = List[Tuple[float, float]]
Edges = List[Tuple[int, int]]


@dataclass(frozen=True)
class FamilyProfile:
    """What a generated graph must look like before it is handed out."""
    n: int
    m: int
    girth: Girth
    max_degree: Optional[int] = None
    regular: Optional[int] = None
    two_edge_connected: Optional[bool] = None
    forest_number: Optional[int] = None


@dataclass(frozen=True)
class FamilySpec:
    name: FamilyName
    params: Tuple[int, ...] = field(default_factory=tuple)


def _cube_drawing(dx: float = 0.0) -> Tuple[Coords, Edges]:
    coords = [(-2, -2), (2, -2), (2, 2), (-2, 2), (-1, -1), (1, -1), (1, 1), (-1, 1)]
    coords = [(x + dx, y) for x, y in coords]
    edges = [(i, (i + 1) % 4) for i in range(4)]
    edges += [(4 + i, 4 + (i + 1) % 4) for i in range(4)]
    edges += [(i, i + 4) for i in range(4)]
    return coords, edges


def _polar(radius: float, degrees: float, dx: float = 0.0) -> Tuple[float, float]:
    angle = math.radians(degrees)
    return (dx + radius * math.cos(angle), radius * math.sin(angle))


def _dodecahedron_drawing(dx: float = 0.0) -> Tuple[Coords, Edges]:
    coords = [_polar(4, 90 + 72 * i, dx) for i in range(5)]
    coords += [_polar(2.5, 90 + 36 * j, dx) for j in range(10)]
    coords += [_polar(1, 126 + 72 * i, dx) for i in range(5)]
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, 5 + 2 * i) for i in range(5)]
    edges += [(5 + j, 5 + (j + 1) % 10) for j in range(10)]
    edges += [(5 + 2 * i + 1, 15 + i) for i in range(5)]
    edges += [(15 + i, 15 + (i + 1) % 5) for i in range(5)]
    return coords, edges


def _disjoint(drawing: Callable[[float], Tuple[Coords, Edges]], k: int, spacing: float) -> Tuple[Coords, Edges]:
    coords: Coords = []
    edges: Edges = []
    for i in range(k):
        c, e = drawing(-spacing * i)
        offset = len(coords)
        coords += c
        edges += [(u + offset, v + offset) for u, v in e]
    return coords, edges


class FamilyService:
    """Service for generating the named graph families with plane embeddings."""

    @staticmethod
    def cube() -> Graph:
        coords, edges = _cube_drawing()
        return EmbeddingService.from_coordinates(8, edges, coords)

    @staticmethod
    def cubes_disjoint(k: int) -> Graph:
        coords, edges = _disjoint(_cube_drawing, k, 6)
        return EmbeddingService.from_coordinates(8 * k, edges, coords)

    @staticmethod
    def cube_minus_edge_disjoint(k: int) -> Graph:
        g = FamilyService.cubes_disjoint(k)
        for i in range(k):
            g = EmbeddingService.delete_edge(g, 8 * i, 8 * i + 1)
        return g

    @staticmethod
    def cubes_linked(k: int) -> Graph:
        """k cubes in a ring: vertex 0 of cube i joined to vertex 1 of cube i+1."""
        coords, edges = _disjoint(_cube_drawing, k, 6)
        edges += [(8 * i, 8 * (i + 1) + 1) for i in range(k - 1)]
        g = EmbeddingService.from_coordinates(8 * k, edges, coords)
        return EmbeddingService.insert_edge(g, 8 * (k - 1), 1)

    @staticmethod
    def dodecahedron() -> Graph:
        coords, edges = _dodecahedron_drawing()
        return EmbeddingService.from_coordinates(20, edges, coords)

    @staticmethod
    def dodecahedra_disjoint(k: int) -> Graph:
        coords, edges = _disjoint(_dodecahedron_drawing, k, 10)
        return EmbeddingService.from_coordinates(20 * k, edges, coords)

    @staticmethod
    def hosono_chain(t: int) -> Graph:
        """Ladder of t squares, each split by one diagonal; outerplanar."""
        top = list(range(t + 1))
        bottom = [t + 1 + i for i in range(t + 1)]
        coords = [(float(i), 1.0) for i in range(t + 1)] + [(float(i), 0.0) for i in range(t + 1)]
        edges = [(top[i], top[i + 1]) for i in range(t)]
        edges += [(bottom[i], bottom[i + 1]) for i in range(t)]
        edges += [(top[i], bottom[i]) for i in range(t + 1)]
        edges += [(top[i], bottom[i + 1]) for i in range(t)]
        return EmbeddingService.from_coordinates(2 * t + 2, edges, coords)

    @staticmethod
    def grid_quadrangulation(p: int, q: int) -> Graph:
        coords = [(float(j), float(i)) for i in range(p) for j in range(q)]
        edges = [(i * q + j, i * q + j + 1) for i in range(p) for j in range(q - 1)]
        edges += [(i * q + j, (i + 1) * q + j) for i in range(p - 1) for j in range(q)]
        return EmbeddingService.from_coordinates(p * q, edges, coords)

    @staticmethod
    def cycle(n: int) -> Graph:
        coords = [_polar(1, 90 - 360 * i / n) for i in range(n)]
        edges = [(i, (i + 1) % n) for i in range(n)]
        return EmbeddingService.from_coordinates(n, edges, coords)

    @staticmethod
    def path(n: int) -> Graph:
        coords = [(float(i), 0.0) for i in range(n)]
        edges = [(i, i + 1) for i in range(n - 1)]
        return EmbeddingService.from_coordinates(n, edges, coords)

    @staticmethod
    def fixture(name: str) -> Graph:
        path = DATA_DIR / f"{name}.graph"
        if not path.exists():
            raise CatalogError(f"fixture file {path.name} is missing")
        return read_graph(path).graph

    # --- catalog ----------------------------------------------------

    @staticmethod
    def arity(name: FamilyName) -> int:
        return {
            FamilyName.CUBES_DISJOINT: 1,
            FamilyName.CUBE_MINUS_EDGE_DISJOINT: 1,
            FamilyName.CUBES_LINKED: 1,
            FamilyName.DODECAHEDRA_DISJOINT: 1,
            FamilyName.HOSONO_CHAIN: 1,
            FamilyName.GRID_QUADRANGULATION: 2,
            FamilyName.CYCLE: 1,
            FamilyName.PATH: 1,
        }.get(name, 0)

    @staticmethod
    def profile(spec: FamilySpec) -> FamilyProfile:
        """Validation profile; raises PreconditionError on out-of-range parameters."""
        name, params = spec.name, tuple(spec.params)
        if len(params) != FamilyService.arity(name):
            raise PreconditionError(
                f"{name.value} takes {FamilyService.arity(name)} parameter(s), got {len(params)}"
            )
        minimum = {
            FamilyName.CUBES_LINKED: 2,
            FamilyName.GRID_QUADRANGULATION: 2,
            FamilyName.CYCLE: 3,
        }.get(name, 1)
        for value in params:
            if value < minimum:
                raise PreconditionError(f"{name.value} parameters must be at least {minimum}, got {value}")

        if name is FamilyName.CUBE:
            return FamilyProfile(8, 12, 4, 3, 3, True, 5)
        if name is FamilyName.CUBES_DISJOINT:
            k = params[0]
            return FamilyProfile(8 * k, 12 * k, 4, 3, 3, k == 1, 5 * k)
        if name is FamilyName.CUBE_MINUS_EDGE_DISJOINT:
            k = params[0]
            return FamilyProfile(8 * k, 11 * k, 4, 3, None, k == 1)
        if name is FamilyName.CUBES_LINKED:
            k = params[0]
            return FamilyProfile(8 * k, 13 * k, 4, 4, None, True)
        if name is FamilyName.DODECAHEDRON:
            return FamilyProfile(20, 30, 5, 3, 3, True, 14)
        if name is FamilyName.DODECAHEDRA_DISJOINT:
            k = params[0]
            return FamilyProfile(20 * k, 30 * k, 5, 3, 3, k == 1, 14 * k)
        if name is FamilyName.HOSONO_CHAIN:
            t = params[0]
            return FamilyProfile(2 * t + 2, 4 * t + 1, 3, 3 if t == 1 else 4, None, True)
        if name is FamilyName.GIRTH6_FIXTURE:
            return FamilyProfile(30, 42, 6, 3, None, True, 23)
        if name is FamilyName.GIRTH7_FIXTURE:
            return FamilyProfile(42, 56, 7, 3, None, True, 34)
        if name is FamilyName.GRID_QUADRANGULATION:
            p, q = params
            max_degree = min(p - 1, 2) + min(q - 1, 2)
            return FamilyProfile(p * q, 2 * p * q - p - q, 4, max_degree, None, True)
        if name is FamilyName.CYCLE:
            n = params[0]
            return FamilyProfile(n, n, n, 2, 2, True, n - 1)
        n = params[0]
        return FamilyProfile(n, n - 1, INFINITE_GIRTH, min(n - 1, 2), None, n == 1, n)

    @staticmethod
    def build(spec: FamilySpec) -> Graph:
        builders: Dict[FamilyName, Callable[..., Graph]] = {
            FamilyName.CUBE: FamilyService.cube,
            FamilyName.CUBES_DISJOINT: FamilyService.cubes_disjoint,
            FamilyName.CUBE_MINUS_EDGE_DISJOINT: FamilyService.cube_minus_edge_disjoint,
            FamilyName.CUBES_LINKED: FamilyService.cubes_linked,
            FamilyName.DODECAHEDRON: FamilyService.dodecahedron,
            FamilyName.DODECAHEDRA_DISJOINT: FamilyService.dodecahedra_disjoint,
            FamilyName.HOSONO_CHAIN: FamilyService.hosono_chain,
            FamilyName.GIRTH6_FIXTURE: lambda: FamilyService.fixture("girth6_fixture"),
            FamilyName.GIRTH7_FIXTURE: lambda: FamilyService.fixture("girth7_fixture"),
            FamilyName.GRID_QUADRANGULATION: FamilyService.grid_quadrangulation,
            FamilyName.CYCLE: FamilyService.cycle,
            FamilyName.PATH: FamilyService.path,
        }
        return builders[spec.name](*spec.params)

    @staticmethod
    def make(spec: FamilySpec) -> Graph:
        """Generate a family member and check it against its profile."""
        expected = FamilyService.profile(spec)
        g = FamilyService.build(spec)
        FamilyService.validate(g, expected, spec)
        logger.debug(f"Generated {spec.name.value}{list(spec.params)}: n={g.n}, m={g.m}")
        return g

    @staticmethod
    def validate(g: Graph, expected: FamilyProfile, spec: FamilySpec) -> None:
        label = f"{spec.name.value}{list(spec.params)}"
        problems: List[str] = []
        if (g.n, g.m) != (expected.n, expected.m):
            problems.append(f"n, m = {g.n}, {g.m}; expected {expected.n}, {expected.m}")
        girth = GraphService.girth(g)
        if girth != expected.girth:
            problems.append(f"girth {girth}; expected {expected.girth}")
        if expected.max_degree is not None and g.max_degree != expected.max_degree:
            problems.append(f"max degree {g.max_degree}; expected {expected.max_degree}")
        if expected.regular is not None and any(g.degree(v) != expected.regular for v in range(g.n)):
            problems.append(f"not {expected.regular}-regular")
        if expected.two_edge_connected is not None:
            if GraphService.is_two_edge_connected(g) != expected.two_edge_connected:
                problems.append(f"2-edge-connectivity is not {expected.two_edge_connected}")
        if g.rotation is None:
            problems.append("no rotation system")
        else:
            EmbeddingService.trace_faces(g)
        if problems:
            raise CatalogError(f"{label} failed validation: " + "; ".join(problems))

    @staticmethod
    def parse_spec(name: str, params: Sequence[int]) -> FamilySpec:
        try:
            family = FamilyName(name)
        except ValueError:
            known = ", ".join(f.value for f in FamilyName)
            raise PreconditionError(f"unknown family '{name}' (known: {known})")
        return FamilySpec(family, tuple(int(p) for p in params))
