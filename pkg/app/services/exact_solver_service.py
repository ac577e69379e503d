import time
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from threading import Lock
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from networkx.utils import UnionFind

from app.core.config import settings
from app.enums import TieBreak
from app.models.graph import Graph
from app.schemas.solver_schemas import IndependentSetResult, MaximumForests, SolveResult, SolverConfig
from app.exceptions.errors import PreconditionError
from app.services.graph_service import GraphService, shortest_cycle_in
from app.core.logger import get_logger

logger = get_logger("exact_solver_service")


class _LimitReached(Exception):
    pass


class _TargetFound(Exception):
    pass


def _core(adjacency, alive: Set[int]) -> Tuple[Set[int], Dict[int, int]]:
    """Peel vertices of degree <= 1 until every survivor lies on a cycle."""
    alive = set(alive)
    degree = {v: sum(1 for w in adjacency[v] if w in alive) for v in alive}
    stack = [v for v, d in degree.items() if d <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adjacency[v]:
            if w in alive:
                degree[w] -= 1
                if degree[w] <= 1:
                    stack.append(w)
    return alive, {v: degree[v] for v in alive}


class _BranchAndBound:
    """Depth-first search over partial decycling sets, branching on a shortest cycle."""

    def __init__(self, g: Graph, config: SolverConfig, deadline: float):
        self.adjacency = g.adjacency
        self.n = g.n
        self.node_limit = config.node_limit
        self.deadline = deadline
        self.lock = Lock()
        self.nodes = 0
        self.best: Optional[FrozenSet[int]] = None
        self.best_size = self.n + 1
        self.target: Optional[int] = None

    def offer(self, deleted: FrozenSet[int]) -> None:
        with self.lock:
            if len(deleted) < self.best_size:
                self.best, self.best_size = deleted, len(deleted)
        if self.target is not None and len(deleted) <= self.target:
            raise _TargetFound()

    def _tick(self) -> None:
        with self.lock:
            self.nodes += 1
            nodes = self.nodes
        if nodes > self.node_limit:
            raise _LimitReached(f"node limit {self.node_limit} reached")
        if nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _LimitReached("time limit reached")

    def lower_bound(self, core: Set[int], degree: Dict[int, int], forbidden: FrozenSet[int]) -> Optional[int]:
        """Fewest deletions that can bring the cycle rank m - n + c to zero, or None if none can."""
        components = UnionFind(core)
        edges = 0
        for v in core:
            for w in self.adjacency[v]:
                if w in core and v < w:
                    edges += 1
                    components.union(v, w)
        rank = edges - len(core) + len(list(components.to_sets()))
        gains = sorted((degree[v] - 1 for v in core if v not in forbidden), reverse=True)
        total = 0
        for k, gain in enumerate(gains, start=1):
            total += gain
            if total >= rank:
                return k
        return None

    def branches(self, deleted: FrozenSet[int], forbidden: FrozenSet[int]) -> Optional[List[Tuple[FrozenSet[int], FrozenSet[int]]]]:
        """Children of a node; None when the node is a solution or is pruned."""
        self._tick()
        alive = set(range(self.n)) - deleted
        core, degree = _core(self.adjacency, alive)
        if not core:
            self.offer(deleted)
            return None
        bound = self.lower_bound(core, degree, forbidden)
        if bound is None or len(deleted) + bound >= self.best_size:
            return None
        cycle = shortest_cycle_in(self.adjacency, core)
        order = sorted(cycle, key=lambda v: (-degree[v], v))
        children = []
        kept = set(forbidden)
        for v in order:
            if v in forbidden:
                continue
            children.append((deleted | {v}, frozenset(kept)))
            kept.add(v)
        return children

    def search(self, deleted: FrozenSet[int], forbidden: FrozenSet[int]) -> None:
        children = self.branches(deleted, forbidden)
        for child_deleted, child_forbidden in children or ():
            if len(child_deleted) >= self.best_size:
                return
            self.search(child_deleted, child_forbidden)


class ExactSolverService:
    """Service for exact forest numbers, maximum forests and independence numbers."""

    @staticmethod
    def greedy_decycling(g: Graph) -> Set[int]:
        """Repeatedly delete a maximum-degree vertex of a shortest cycle."""
        deleted: Set[int] = set()
        while True:
            core, degree = _core(g.adjacency, set(range(g.n)) - deleted)
            if not core:
                return deleted
            cycle = shortest_cycle_in(g.adjacency, core)
            deleted.add(max(cycle, key=lambda v: (degree[v], -v)))

    @staticmethod
    def _check_order(g: Graph) -> None:
        if g.n > settings.BRUTE_FORCE_MAX_ORDER:
            raise PreconditionError(
                f"brute force is limited to {settings.BRUTE_FORCE_MAX_ORDER} vertices, graph has {g.n}"
            )

    @staticmethod
    def _result(g: Graph, deleted, nodes: int, started: float, proven: bool, method: str) -> SolveResult:
        witness = sorted(set(range(g.n)) - set(deleted))
        return SolveResult(
            n=g.n,
            forest_number=len(witness),
            decycling_number=g.n - len(witness),
            witness=witness,
            nodes=nodes,
            elapsed_s=round(time.monotonic() - started, 6),
            proven_optimal=proven,
            method=method,
        )

    @staticmethod
    def _forest_combinations(g: Graph, k: int):
        """Maximum-forest candidates of size k in lexicographic order of their sorted vertex lists."""
        core, _ = _core(g.adjacency, set(range(g.n)))
        peeled = set(range(g.n)) - core
        need = k - len(peeled)
        if need < 0 or need > len(core):
            return
        for chosen in combinations(sorted(core), need):
            if GraphService.is_induced_forest(g, chosen):
                yield sorted(peeled | set(chosen))

    @staticmethod
    def forest_number_bruteforce(g: Graph) -> SolveResult:
        """Descending-size subset enumeration; the witness is the lexicographically smallest maximum forest."""
        ExactSolverService._check_order(g)
        started = time.monotonic()
        core, _ = _core(g.adjacency, set(range(g.n)))
        nodes = 0
        for need in range(len(core), -1, -1):
            for chosen in combinations(sorted(core), need):
                nodes += 1
                if GraphService.is_induced_forest(g, chosen):
                    deleted = core - set(chosen)
                    return ExactSolverService._result(g, deleted, nodes, started, True, "brute_force")
        return ExactSolverService._result(g, core, nodes, started, True, "brute_force")

    @staticmethod
    def enumerate_maximum_forests(g: Graph, limit: Optional[int] = None) -> MaximumForests:
        best = ExactSolverService.forest_number_bruteforce(g).forest_number
        forests: List[List[int]] = []
        truncated = False
        for forest in ExactSolverService._forest_combinations(g, best):
            if limit is not None and len(forests) >= limit:
                truncated = True
                break
            forests.append(forest)
        return MaximumForests(
            forest_number=best, forests=forests, count=len(forests), truncated=truncated, limit=limit
        )

    @staticmethod
    def forest_number_exact(g: Graph, config: Optional[SolverConfig] = None) -> SolveResult:
        config = config or SolverConfig()
        started = time.monotonic()
        search = _BranchAndBound(g, config, started + config.time_limit_s)

        incumbent = frozenset(ExactSolverService.greedy_decycling(g))
        search.best, search.best_size = incumbent, len(incumbent)
        improved = False
        proven = True
        try:
            if config.jobs > 1:
                ExactSolverService._parallel_search(search, config.jobs)
            else:
                search.search(frozenset(), frozenset())
            improved = search.best is not incumbent
        except _LimitReached as exc:
            proven = False
            logger.warning(f"Exact solve on n={g.n} stopped early: {exc}; returning incumbent")

        if proven and (config.jobs > 1 or not improved):
            ExactSolverService._canonical_witness(search, g)
        if proven and config.tie_break is TieBreak.LEXICOGRAPHIC:
            ExactSolverService._lexicographic_witness(search, g)
        return ExactSolverService._result(g, search.best, search.nodes, started, proven, "branch_and_bound")

    @staticmethod
    def _parallel_search(search: _BranchAndBound, jobs: int) -> None:
        children = search.branches(frozenset(), frozenset()) or []
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(search.search, d, f) for d, f in children]
            for future in futures:
                future.result()

    @staticmethod
    def _first_at_target(search: _BranchAndBound, deleted: FrozenSet[int], forbidden: FrozenSet[int]) -> Optional[FrozenSet[int]]:
        """First decycling set of the known optimum size in depth-first order, if any."""
        size = search.best_size
        saved = search.best
        search.best, search.best_size, search.target = None, size + 1, size
        found = None
        try:
            search.search(deleted, forbidden)
        except _TargetFound:
            found = search.best
        finally:
            search.target = None
            search.best_size = size
            search.best = saved
        return found

    @staticmethod
    def _canonical_witness(search: _BranchAndBound, g: Graph) -> None:
        try:
            found = ExactSolverService._first_at_target(search, frozenset(), frozenset())
        except _LimitReached:
            logger.warning(f"Canonical witness pass on n={g.n} hit a limit; keeping the search witness")
            return
        if found is not None:
            search.best = found

    @staticmethod
    def _lexicographic_witness(search: _BranchAndBound, g: Graph) -> None:
        """Fix vertices into the forest in increasing order while an optimum remains reachable."""
        kept: Set[int] = set()
        dropped: Set[int] = set()
        try:
            for v in range(g.n):
                found = ExactSolverService._first_at_target(search, frozenset(dropped), frozenset(kept | {v}))
                if found is not None:
                    kept.add(v)
                else:
                    dropped.add(v)
        except _LimitReached:
            logger.warning(f"Lexicographic witness pass on n={g.n} hit a limit; keeping the canonical witness")
            return
        search.best = frozenset(dropped)

    @staticmethod
    def max_independent_set(g: Graph) -> IndependentSetResult:
        """Include-first branching over vertices in increasing order; the witness is lexicographically smallest."""
        ExactSolverService._check_order(g)
        best: List[int] = []

        def extend(chosen: List[int], candidates: List[int]) -> None:
            nonlocal best
            if len(chosen) + len(candidates) <= len(best):
                return
            if not candidates:
                best = list(chosen)
                return
            v, rest = candidates[0], candidates[1:]
            extend(chosen + [v], [w for w in rest if w not in g.adjacency[v]])
            extend(chosen, rest)

        extend([], list(range(g.n)))
        return IndependentSetResult(size=len(best), witness=best)
