"""
Reduction engine: applies catalog rules until components are small enough for
the exact solver, then lifts the forests back through the recorded steps.
"""
from math import ceil
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.enums import GraphClass, Guarantee, LeafMethod, StepKind
from app.models.bounds import Point, format_fraction
from app.models.graph import FaceSet, Graph
from app.schemas.reduction_schemas import (
    ApexRecord,
    CheckResult,
    ConditionalLift,
    ForestCertificate,
    ReductionLeaf,
    ReductionStep,
    VerificationReport,
)
from app.schemas.solver_schemas import SolverConfig
from app.exceptions.errors import ApplicationException, EmbeddingError, ReductionError, RuleInapplicable
from app.services import girth4_rules, girth5_rules
from app.services.audit_service import AuditService
from app.services.bounds_service import BoundsService
from app.services.embedding_service import EmbeddingService
from app.services.exact_solver_service import ExactSolverService
from app.services.graph_service import GraphService
from app.services.reduction_rules import Proposal, RuleContext, RuleSpec, Surgered, SurgeryCheck
from app.core.logger import get_logger

logger = get_logger("reduction_engine")

CATALOG: Dict[GraphClass, Tuple[RuleSpec, ...]] = {
    GraphClass.GIRTH4: girth4_rules.RULES,
    GraphClass.GIRTH5: girth5_rules.RULES,
}


def _split_rule(graph_class: GraphClass) -> str:
    return CATALOG[graph_class][0].rule_id


def _faces(g: Graph) -> Optional[FaceSet]:
    if not g.has_rotation:
        return None
    try:
        return EmbeddingService.trace_faces(g)
    except EmbeddingError as exc:
        logger.warning(f"Embedding lost on n={g.n}: {exc.message}; face rules disabled")
        return None


class _Reducer:
    """One reduction run: the trace, the leaves and the next free apex id."""

    def __init__(self, graph_class: GraphClass, threshold: int, config: SolverConfig, n: int):
        self.graph_class = graph_class
        self.threshold = threshold
        self.config = config
        self.next_id = n
        self.trace: List[ReductionStep] = []
        self.leaves: List[ReductionLeaf] = []

    def leaf(self, method: LeafMethod, g: Graph, names: Sequence[int], forest, depth: int,
             proven: bool = True) -> List[int]:
        vertices = sorted(names[v] for v in forest)
        self.leaves.append(ReductionLeaf(
            method=method, n=g.n, m=g.m, forest=vertices, proven_optimal=proven, depth=depth
        ))
        return list(forest)

    def exact_leaf(self, g: Graph, names: Sequence[int], depth: int) -> List[int]:
        result = ExactSolverService.forest_number_exact(g, self.config)
        return self.leaf(LeafMethod.EXACT, g, names, result.witness, depth, result.proven_optimal)

    def solve(self, g: Graph, names: Sequence[int], depth: int = 0) -> List[int]:
        """Induced forest of g in local ids."""
        if g.n == 0:
            return self.leaf(LeafMethod.EMPTY, g, names, [], depth)

        components = GraphService.connected_components(g)
        if len(components) > 1:
            return self.split(g, names, components, depth)
        if GraphService.is_induced_forest(g, range(g.n)):
            return self.leaf(LeafMethod.EXACT, g, names, range(g.n), depth)
        if g.n <= self.threshold:
            return self.exact_leaf(g, names, depth)

        bridges = GraphService.bridges(g)
        if bridges:
            return self.bridge(g, names, min(bridges), depth)
        if all(g.degree(v) == 2 for v in range(g.n)):
            dropped = min(range(g.n), key=lambda v: names[v])
            return self.leaf(LeafMethod.CYCLE, g, names, [v for v in range(g.n) if v != dropped], depth)

        proposal = ReductionService.find_application(g, self.graph_class, _faces(g))
        if proposal is None:
            return self.uncovered(g, names, depth)
        return self.reduce_step(g, names, proposal, depth)

    def split(self, g: Graph, names: Sequence[int], components: List[List[int]], depth: int) -> List[int]:
        self.trace.append(ReductionStep(
            kind=StepKind.SPLIT, rule=_split_rule(self.graph_class),
            matched=sorted(names[min(c)] for c in components),
            n_before=g.n, m_before=g.m, n_after=g.n, m_after=g.m, depth=depth,
        ))
        forest: List[int] = []
        for comp in components:
            sub, relabel = GraphService.induced_subgraph(g, comp)
            inverse = {new: old for old, new in relabel.items()}
            sub_names = [names[inverse[v]] for v in range(sub.n)]
            forest += [inverse[v] for v in self.solve(sub, sub_names, depth + 1)]
        return forest

    def bridge(self, g: Graph, names: Sequence[int], edge: Tuple[int, int], depth: int) -> List[int]:
        u, v = edge
        self.trace.append(ReductionStep(
            kind=StepKind.BRIDGE, rule=_split_rule(self.graph_class),
            matched=[names[u], names[v]], removed_edges=[sorted((names[u], names[v]))],
            n_before=g.n, m_before=g.m, n_after=g.n, m_after=g.m - 1, depth=depth,
        ))
        return self.solve(EmbeddingService.delete_edge(g, u, v), names, depth + 1)

    def uncovered(self, g: Graph, names: Sequence[int], depth: int) -> List[int]:
        witness = "none"
        try:
            report = AuditService.discharging_audit(g, self.graph_class)
            if report.violations:
                first = report.violations[0]
                witness = f"{first.predicate} at {[names[v] for v in first.vertices]}"
        except ApplicationException as exc:
            witness = f"audit unavailable ({exc.message})"
        logger.warning(f"rule-coverage gap on n={g.n}, m={g.m}: audit witness {witness}")

        result = ExactSolverService.forest_number_exact(g, self.config)
        if result.proven_optimal:
            logger.info(f"Exact fallback settled the uncovered component (n={g.n})")
            return self.leaf(LeafMethod.EXACT, g, names, result.witness, depth)
        logger.warning(f"Greedy last resort on n={g.n}; the certificate becomes heuristic")
        greedy = set(range(g.n)) - ExactSolverService.greedy_decycling(g)
        best = result.witness if len(result.witness) >= len(greedy) else sorted(greedy)
        return self.leaf(LeafMethod.GREEDY, g, names, best, depth, proven=False)

    def reduce_step(self, g: Graph, names: Sequence[int], proposal: Proposal, depth: int) -> List[int]:
        s = proposal.surgery
        surgered = ReductionService.apply_step(g, proposal)
        h = surgered.graph
        h_names = [0] * h.n
        for old, new in surgered.relabel.items():
            h_names[new] = names[old]
        apex_ids: Dict[str, int] = {}
        for apex in s.apexes:
            apex_ids[apex.key] = self.next_id
            h_names[surgered.apex_ids[apex.key]] = self.next_id
            self.next_id += 1

        logger.debug(
            f"{proposal.rule.rule_id}/{proposal.variant.name} at {[names[v] for v in s.matched]}: "
            f"n {g.n} -> {h.n}, m {g.m} -> {h.m}"
        )
        self.trace.append(ReductionStep(
            kind=StepKind.SURGERY,
            rule=proposal.rule.rule_id,
            variant=proposal.variant.name,
            triple=list(proposal.triple.as_tuple()),
            matched=[names[v] for v in s.matched],
            deleted=sorted(names[v] for v in s.deleted),
            removed_edges=[sorted((names[x], names[y])) for x, y in SurgeryCheck.removed_edges(g, s.deleted)],
            added_edges=[sorted((names[x], names[y])) for x, y in s.added_edges],
            apexes=[
                ApexRecord(
                    label=apex_ids[a.key],
                    neighbors=[names[w] for w in a.neighbors] + [apex_ids[k] for k in a.apex_neighbors],
                )
                for a in s.apexes
            ],
            lift=sorted(names[v] for v in s.base),
            lift_if_kept=[
                ConditionalLift(apex=apex_ids[key], vertices=sorted(names[v] for v in vs))
                for key, vs in s.lift_if_kept
            ],
            n_before=g.n, m_before=g.m, n_after=h.n, m_after=h.m, depth=depth,
        ))

        smaller = self.solve(h, h_names, depth + 1)
        lifted = SurgeryCheck.lift(s, surgered, smaller)
        if not GraphService.is_induced_forest(g, lifted):
            raise ReductionError(
                f"{proposal.rule.rule_id}/{proposal.variant.name} lift at {[names[v] for v in s.matched]} "
                f"is not an induced forest"
            )
        if len(lifted) < len(smaller) + proposal.triple.gamma:
            raise ReductionError(
                f"{proposal.rule.rule_id}/{proposal.variant.name} lift gained {len(lifted) - len(smaller)} "
                f"vertices, expected {proposal.triple.gamma}"
            )
        return sorted(lifted)


def _leaf_holds(leaf: ReductionLeaf, vertex: Point) -> bool:
    a, b = vertex
    return len(leaf.forest) >= a * leaf.n - b * leaf.m


class ReductionService:
    """Service for rule matching, surgery, reduction and certificate checks."""

    @staticmethod
    def rules(graph_class: GraphClass) -> Tuple[RuleSpec, ...]:
        return CATALOG[graph_class]

    @staticmethod
    def find_application(g: Graph, graph_class: GraphClass, faces: Optional[FaceSet] = None) -> Optional[Proposal]:
        """First sound match in catalog order; the smallest matched tuple wins within a variant."""
        ctx = RuleContext(g, graph_class, faces)
        guard = graph_class.min_girth
        for rule in CATALOG[graph_class]:
            for variant in rule.variants:
                if variant.needs_embedding and not ctx.has_faces:
                    continue
                candidates = sorted(
                    set(variant.matcher(ctx)),
                    key=lambda s: (s.matched, sorted(s.deleted), sorted(s.base)),
                )
                for s in candidates:
                    if SurgeryCheck.validate(g, s, variant.triple, guard) is not None:
                        return Proposal(rule, variant, s)
        return None

    @staticmethod
    def apply_step(g: Graph, proposal: Proposal) -> Surgered:
        """The smaller graph H*; raises ReductionError when the accounting or the class is off."""
        s, t = proposal.surgery, proposal.triple
        name = f"{proposal.rule.rule_id}/{proposal.variant.name}"
        delta_n, delta_m = SurgeryCheck.accounting(g, s)
        if delta_n != t.alpha or delta_m < t.beta:
            raise ReductionError(
                f"{name} at {list(s.matched)}: removes {delta_n} vertices and {delta_m} edges, "
                f"triple {t.as_tuple()} needs {t.alpha} and at least {t.beta}"
            )
        try:
            surgered = SurgeryCheck.build(g, s, proposal.guard)
        except (RuleInapplicable, EmbeddingError) as exc:
            raise ReductionError(f"{name} at {list(s.matched)}: {exc.message}")
        if GraphService.girth(surgered.graph) < proposal.guard:
            raise ReductionError(f"{name} at {list(s.matched)} left the class")
        return surgered

    @staticmethod
    def reduce(
        g: Graph,
        graph_class: GraphClass,
        threshold: Optional[int] = None,
        config: Optional[SolverConfig] = None,
    ) -> ForestCertificate:
        GraphService.check_class(g, graph_class)
        if g.has_rotation:
            EmbeddingService.trace_faces(g)
        threshold = settings.FALLBACK_THRESHOLD if threshold is None else threshold
        run = _Reducer(graph_class, threshold, config or SolverConfig(), g.n)
        forest = run.solve(g, list(range(g.n)))

        value, vertex = BoundsService.best_bound(graph_class, g.n, g.m)
        guarantee = Guarantee.CERTIFIED
        for leaf in run.leaves:
            if leaf.method is LeafMethod.GREEDY:
                guarantee = Guarantee.HEURISTIC
            elif not _leaf_holds(leaf, vertex):
                logger.warning(f"Leaf (n={leaf.n}, m={leaf.m}) of size {len(leaf.forest)} misses the class bound")
                guarantee = Guarantee.HEURISTIC
        if len(forest) < ceil(value):
            if guarantee is Guarantee.CERTIFIED:
                raise ReductionError(f"certified forest of size {len(forest)} is below {format_fraction(value)}")
            logger.warning(f"Heuristic forest of size {len(forest)} is below the bound {format_fraction(value)}")

        logger.info(
            f"Reduced {graph_class.value} graph (n={g.n}, m={g.m}) in {len(run.trace)} steps "
            f"to a forest of {len(forest)} ({guarantee.value})"
        )
        return ForestCertificate(
            graph_class=graph_class,
            n=g.n,
            m=g.m,
            vertices=sorted(forest),
            size=len(forest),
            claimed_bound=format_fraction(value),
            claimed_ceiling=ceil(value),
            bound_vertex=[format_fraction(vertex[0]), format_fraction(vertex[1])],
            guarantee=guarantee,
            threshold=threshold,
            trace=run.trace,
            leaves=run.leaves,
        )

    @staticmethod
    def verify_certificate(g: Graph, c: ForestCertificate) -> VerificationReport:
        checks: List[CheckResult] = []

        def record(name: str, passed: bool, detail: str = "") -> None:
            checks.append(CheckResult(name=name, passed=passed, detail=detail))

        certified = c.guarantee is Guarantee.CERTIFIED
        record("graph", c.n == g.n and c.m == g.m, f"certificate n={c.n}, m={c.m}; graph n={g.n}, m={g.m}")
        girth = GraphService.girth(g)
        record("class", girth >= c.graph_class.min_girth, f"girth {girth}")

        in_range = all(0 <= v < g.n for v in c.vertices) and len(set(c.vertices)) == len(c.vertices)
        record("vertex_range", in_range)
        if in_range:
            record("induced_forest", GraphService.is_induced_forest(g, c.vertices))
        else:
            record("induced_forest", False, "vertex set is not a set of graph vertices")

        value, vertex = BoundsService.best_bound(c.graph_class, g.n, g.m)
        bound_ok = (
            c.claimed_bound == format_fraction(value)
            and c.claimed_ceiling == ceil(value)
            and c.bound_vertex == [format_fraction(vertex[0]), format_fraction(vertex[1])]
        )
        record("bound", bound_ok, f"recomputed {format_fraction(value)}, claimed {c.claimed_bound}")

        size_ok = c.size == len(c.vertices) and (not certified or len(c.vertices) >= c.claimed_ceiling)
        record("size", size_ok, f"{len(c.vertices)} vertices, ceiling {c.claimed_ceiling} ({c.guarantee.value})")

        polygon = BoundsService.polygon(c.graph_class)
        table = {t.as_tuple(): t for t in BoundsService.triples(c.graph_class)}
        rule_ids = {r.rule_id for r in CATALOG[c.graph_class]}
        bad_steps = []
        alpha_sum = beta_sum = bridges = removed = 0
        for i, step in enumerate(c.trace):
            if step.rule not in rule_ids:
                bad_steps.append(f"step {i}: unknown rule {step.rule}")
            if step.kind is StepKind.BRIDGE:
                bridges += 1
                if (step.n_after, step.m_after) != (step.n_before, step.m_before - 1):
                    bad_steps.append(f"step {i}: bridge deletion changes more than one edge")
            elif step.kind is StepKind.SURGERY:
                t = table.get(tuple(step.triple or ()))
                if t is None or not BoundsService.check_triple(t, polygon):
                    bad_steps.append(f"step {i}: triple {step.triple} is not a sound {c.graph_class.value} triple")
                    continue
                if step.n_before - step.n_after != t.alpha or step.m_before - step.m_after < t.beta:
                    bad_steps.append(f"step {i}: {step.rule}/{step.variant} accounting does not meet {t.as_tuple()}")
                alpha_sum += t.alpha
                beta_sum += t.beta
                removed += step.m_before - step.m_after
        record("step_arithmetic", not bad_steps, "; ".join(bad_steps))

        leaf_n = sum(leaf.n for leaf in c.leaves)
        leaf_m = sum(leaf.m for leaf in c.leaves)
        record("vertex_accounting", g.n == leaf_n + alpha_sum,
               f"n={g.n}, leaves {leaf_n}, removed by rules {alpha_sum}")
        record("edge_accounting", g.m == leaf_m + removed + bridges and g.m >= leaf_m + beta_sum + bridges,
               f"m={g.m}, leaves {leaf_m}, removed by rules {removed} (triples {beta_sum}), bridges {bridges}")

        if certified:
            short = [f"leaf {i}" for i, leaf in enumerate(c.leaves)
                     if leaf.method is LeafMethod.GREEDY or not _leaf_holds(leaf, vertex)]
            record("leaf_bounds", not short, "; ".join(short))

        return VerificationReport(passed=all(ch.passed for ch in checks), checks=checks)
