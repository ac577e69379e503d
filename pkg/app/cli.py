"""
Command line front end.

Every subcommand prints a ReportEnvelope on standard output. Exit status is
0 on success, 1 when a check ran and failed, 2 when the input was unusable.
"""
import argparse
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Optional, Sequence, Tuple

from pydantic import ValidationError

from app.enums import GraphClass, TieBreak
from app.models.graph import Graph
from app.schemas.reduction_schemas import ForestCertificate
from app.schemas.report_schemas import ReportEnvelope
from app.schemas.solver_schemas import SolverConfig
from app.exceptions.errors import ApplicationException, InputFormatError
from app.services.audit_service import AuditService
from app.services.bounds_service import BoundsService
from app.services.exact_solver_service import ExactSolverService
from app.services.family_service import FamilyService
from app.services.graph_service import GraphService
from app.services.reduction_engine import ReductionService
from app.services.report_service import ReportService
from app.services.svg_plot_service import SvgPlotService
from app.utils.graph_io import emit_graph, parse_graph
from app.core.logger import get_logger

logger = get_logger("cli")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1

Outcome = Tuple[ReportEnvelope, bool]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc.strerror}")


def _load(path: str) -> Tuple[Graph, str]:
    text = _read_text(path)
    return parse_graph(text).graph, text


def write_atomic(path: str, text: str) -> None:
    """Write through a temporary file in the target directory, then rename."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=str(target.parent), prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _solver_config(args: argparse.Namespace) -> SolverConfig:
    overrides = {
        "time_limit_s": getattr(args, "limit_s", None),
        "node_limit": getattr(args, "node_limit", None),
        "jobs": getattr(args, "jobs", None),
    }
    config = SolverConfig(**{k: v for k, v in overrides.items() if v is not None})
    tie_break = getattr(args, "tie_break", None)
    if tie_break is not None:
        config = config.model_copy(update={"tie_break": TieBreak(tie_break)})
    return config


def _load_certificate(path: str) -> ForestCertificate:
    try:
        document = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"certificate is not JSON: {exc.msg}", exc.lineno)
    if isinstance(document, dict) and "result" in document and "command" in document:
        document = document["result"]
    try:
        return ForestCertificate.model_validate(document)
    except ValidationError as exc:
        raise InputFormatError(f"certificate does not match the schema: {exc.errors()[0]['msg']}")


# --- handlers ----------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> Optional[Outcome]:
    spec = FamilyService.parse_spec(args.family, args.params)
    g = FamilyService.make(spec)
    comments = [f"{spec.name.value} {' '.join(str(p) for p in spec.params)}".strip()]
    text = emit_graph(g, comments)
    if args.output is None:
        sys.stdout.write(text)
        return None
    write_atomic(args.output, text)
    result = {"family": spec.name.value, "params": list(spec.params), "n": g.n, "m": g.m, "path": args.output}
    return ReportService.envelope("gen", result, text), True


def cmd_info(args: argparse.Namespace) -> Outcome:
    g, text = _load(args.file)
    return ReportService.envelope("info", GraphService.info(g), text), True


def cmd_bound(args: argparse.Namespace) -> Outcome:
    if args.catalog:
        return ReportService.envelope("bound", BoundsService.catalog()), True
    n, m, text = args.n, args.m, None
    if args.file is not None:
        g, text = _load(args.file)
        n = g.n if n is None else n
        m = g.m if m is None else m
    if args.best is not None:
        if n is None or m is None:
            raise InputFormatError("--best needs a graph file or both --n and --m")
        report = BoundsService.best_bound_report(GraphClass(args.best), n, m)
        return ReportService.envelope("bound", report, text), True
    value = BoundsService.formula_value(
        args.formula, n=n, m=m, g=args.girth, alpha=args.alpha, max_degree=args.max_degree
    )
    return ReportService.envelope("bound", value, text), True


def cmd_exact(args: argparse.Namespace) -> Outcome:
    g, text = _load(args.file)
    if args.all:
        result = ExactSolverService.enumerate_maximum_forests(g, args.max_forests)
        return ReportService.envelope("exact", result, text), True
    result = ExactSolverService.forest_number_exact(g, _solver_config(args))
    return ReportService.envelope("exact", result, text), True


def cmd_reduce(args: argparse.Namespace) -> Outcome:
    g, text = _load(args.file)
    certificate = ReductionService.reduce(g, GraphClass(args.graph_class), args.threshold, _solver_config(args))
    envelope = ReportService.envelope("reduce", certificate, text)
    if args.output is not None:
        write_atomic(args.output, ReportService.render(envelope) + "\n")
    return envelope, True


def cmd_verify(args: argparse.Namespace) -> Outcome:
    g, text = _load(args.file)
    report = ReductionService.verify_certificate(g, _load_certificate(args.certificate))
    if not report.passed:
        failed = ", ".join(c.name for c in report.checks if not c.passed)
        logger.warning(f"Certificate verification failed: {failed}")
    return ReportService.envelope("verify", report, text), report.passed


def cmd_audit(args: argparse.Namespace) -> Outcome:
    g, text = _load(args.file)
    report = AuditService.discharging_audit(g, GraphClass(args.mode))
    return ReportService.envelope("audit", report, text), True


def cmd_refute_kowalik(args: argparse.Namespace) -> Outcome:
    report = BoundsService.kowalik_refutation(args.k, _solver_config(args))
    return ReportService.envelope("refute-kowalik", report), report.violated


def cmd_plot_polygon(args: argparse.Namespace) -> Outcome:
    graph_class = GraphClass(args.graph_class)
    write_atomic(args.output, SvgPlotService.plot_polygon(graph_class))
    result = BoundsService.polygon_report(graph_class).model_dump(mode="json")
    result["path"] = args.output
    return ReportService.envelope("plot-polygon", result), True


def cmd_triples(args: argparse.Namespace) -> Outcome:
    table = BoundsService.triple_table(GraphClass(args.graph_class))
    passed = table.all_hold and all(row.certificate_valid for row in table.rows)
    return ReportService.envelope("triples", table), passed


def cmd_tightness(args: argparse.Namespace) -> Outcome:
    rows = BoundsService.tightness_report(args.girths, _solver_config(args))
    return ReportService.envelope("tightness", rows), True


def cmd_corollary(args: argparse.Namespace) -> Outcome:
    return ReportService.envelope("corollary", BoundsService.corollary_report(args.base, args.girth)), True


# --- parser ------------------------------------------------------------

def _solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--limit-s", type=float, default=None, help="time limit of each exact solve")
    parser.add_argument("--node-limit", type=int, default=None, help="branch-and-bound node limit")
    parser.add_argument("--jobs", type=int, default=None, help="parallel branch-and-bound width")


def build_parser() -> argparse.ArgumentParser:
    classes = [c.value for c in GraphClass]
    parser = argparse.ArgumentParser(prog="python -m app", description="Induced forests in sparse planar graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a family member as a graph file")
    p.add_argument("family")
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("-o", "--output", default=None, help="file to write; standard output when omitted")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("info", help="size, girth, degrees and faces of a graph")
    p.add_argument("file", help="graph file, '-' for standard input")
    p.set_defaults(handler=cmd_info)

    p = sub.add_parser("bound", help="evaluate a catalog formula or the best class bound")
    p.add_argument("file", nargs="?", default=None)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--formula", default=None)
    which.add_argument("--best", choices=classes, default=None)
    which.add_argument("--catalog", action="store_true")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--g", dest="girth", type=int, default=None)
    p.add_argument("--alpha", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("exact", help="exact forest number with a witness")
    p.add_argument("file")
    _solver_flags(p)
    p.add_argument("--tie-break", choices=[t.value for t in TieBreak], default=None)
    p.add_argument("--all", action="store_true", help="list every maximum induced forest (brute force)")
    p.add_argument("--max-forests", type=int, default=None)
    p.set_defaults(handler=cmd_exact)

    p = sub.add_parser("reduce", help="certified induced forest through the reduction rules")
    p.add_argument("file")
    p.add_argument("--class", dest="graph_class", choices=classes, required=True)
    p.add_argument("--threshold", type=int, default=None, help="components up to this order are solved exactly")
    p.add_argument("-o", "--output", default=None, help="also write the envelope to this file")
    _solver_flags(p)
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("verify", help="re-check a certificate produced by reduce")
    p.add_argument("file")
    p.add_argument("certificate")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("audit", help="Euler counting audit of a plane graph")
    p.add_argument("file")
    p.add_argument("--mode", choices=classes, required=True)
    p.set_defaults(handler=cmd_audit)

    p = sub.add_parser("refute-kowalik", help="claimed bound against k disjoint cubes")
    p.add_argument("--k", type=int, required=True)
    _solver_flags(p)
    p.set_defaults(handler=cmd_refute_kowalik)

    p = sub.add_parser("plot-polygon", help="SVG drawing of a class polygon")
    p.add_argument("--class", dest="graph_class", choices=classes, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=cmd_plot_polygon)

    p = sub.add_parser("triples", help="check the accounting triples of a class")
    p.add_argument("--class", dest="graph_class", choices=classes, required=True)
    p.set_defaults(handler=cmd_triples)

    p = sub.add_parser("tightness", help="girth corollaries against their witness families")
    p.add_argument("--girths", type=int, nargs="+", default=[4, 5, 6, 7])
    _solver_flags(p)
    p.set_defaults(handler=cmd_tightness)

    p = sub.add_parser("corollary", help="substitute the girth edge bound into a formula")
    p.add_argument("--base", required=True)
    p.add_argument("--g", dest="girth", type=int, required=True)
    p.set_defaults(handler=cmd_corollary)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        outcome = args.handler(args)
    except ApplicationException as exc:
        logger.warning(f"Application error: {exc.message}")
        sys.stderr.write(f"error: {exc.message}\n")
        return exc.exit_code
    if outcome is None:
        return EXIT_OK
    envelope, passed = outcome
    sys.stdout.write(ReportService.render(envelope) + "\n")
    return EXIT_OK if passed else EXIT_CHECK_FAILED
