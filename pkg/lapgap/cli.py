"""
Command-line entry point.

Usage:
    lapgap spectrum FILE [--solver jacobi|lapack]
    lapgap bounds FILE [--spectrum]
    lapgap certify FILE --method thm1|thm3 [--verify]
    lapgap classify FILE
    lapgap sweep [--n-min 3] --n-max 7 [--checks thm1,thm2,...] [--long-run] [--workers K]
    lapgap random-sweep --n 12 --trials 1000 --seed 1
    lapgap counterexample --k 4
    lapgap lemma --n-max 200
    lapgap verify RECORD.json

FILE is graph6 (optionally with a ``>>graph6<<`` header) or an edge list. Every subcommand
accepts ``--json`` for machine-readable output and ``--verbose`` for debug logging.
Exit code 0 on success, 1 on violations or errors, 2 on usage errors.
"""

import argparse
import json
from pathlib import Path
import sys
from typing import List, Optional

from loguru import logger
from pydantic import BaseModel, ValidationError

from lapgap.bounds import bound_report
from lapgap.certify import (
    certificate_record,
    certify_thm1,
    certify_thm3,
    lemma_grid,
    verify_certificate_record,
)
from lapgap.config import Settings
from lapgap.errors import LapgapError
from lapgap.graph_io import read_graph_file, to_graph6
from lapgap.harness import random_sweep, sweep
from lapgap.records import CertificateRecord, SweepReport
from lapgap.rigidity import classify_equality, complement_eigenvalue_report, edge_removal_demo
from lapgap.spectral import SOLVERS, spectrum
from lapgap.utils.log_timing import configure_logging


def _emit(args: argparse.Namespace, model: BaseModel, lines: List[str]) -> None:
    if args.json:
        print(json.dumps(model.model_dump(mode="json"), indent=2))
    else:
        print("\n".join(lines))


def _settings(args: argparse.Namespace) -> Settings:
    return Settings.from_env(
        workers=getattr(args, "workers", None),
        progress=False if getattr(args, "no_progress", False) else None,
    )


def cmd_spectrum(args: argparse.Namespace) -> int:
    g = read_graph_file(args.file)
    result = spectrum(g, solver=args.solver)
    record = result.to_record(to_graph6(g))
    lines = [f"graph6: {record.graph6}", f"n: {record.n}"]
    lines += [f"  {value:.12f}  x{mult}" for value, mult in result.multiplicities()]
    lines += [f"lambda_n: {result.lambda_max:.12f}", f"max residual: {record.max_residual:.3e}"]
    _emit(args, record, lines)
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    g = read_graph_file(args.file)
    report = bound_report(g, compute_spectrum=args.spectrum)
    lines = [f"{name}: {value}" for name, value in report.model_dump(mode="json").items()]
    _emit(args, report, lines)
    return 0 if report.is_sound() else 1


def cmd_certify(args: argparse.Namespace) -> int:
    g = read_graph_file(args.file)
    cert, audit = (certify_thm1 if args.method == "thm1" else certify_thm3)(g)
    record = certificate_record(g, cert, audit)
    ok = audit.holds
    lines = [
        f"method: {cert.method.value} ({cert.argument})",
        f"bound: {cert.bound:.4f}" + (f" = {cert.exact_bound}" if cert.exact_bound is not None else ""),
        f"rayleigh: {cert.rayleigh:.4f}",
        f"pair: {cert.pair}",
        f"witness: {', '.join(f'{x:.6g}' for x in cert.witness)}",
        f"worst slack: {audit.worst_slack:.6g}",
    ]
    if cert.note:
        lines.append(f"note: {cert.note}")
    if args.verify:
        verified = verify_certificate_record(record)
        lines.append(f"verified: {str(verified).lower()}")
        ok = ok and verified
    _emit(args, record, lines)
    return 0 if ok else 1


def cmd_classify(args: argparse.Namespace) -> int:
    g = read_graph_file(args.file)
    verdict = classify_equality(g)
    lines = [f"kind: {verdict.kind.value}"]
    if verdict.pair is not None:
        lines.append(f"missing edge: {verdict.pair}")
    if verdict.parts is not None:
        p_v, p_w = verdict.parts
        lines.append(f"parts: {list(p_v)} | {list(p_w)} (sizes {len(p_v)}, {len(p_w)})")
        lines.append(f"center: {verdict.center}")
    if verdict.is_equality:
        other = complement_eigenvalue_report(verdict, g.n)
        if other.value is not None:
            lines.append(f"complement eigenvalue: {other.value} (multiplicity {other.dimension})")
        if other.discrepancy:
            lines.append(f"  printed value {other.printed_value} disagrees with the trace identity")
    _emit(args, verdict, lines)
    return 0


def _sweep_lines(report: SweepReport) -> List[str]:
    lines = [
        f"mode: {report.mode}, n: {report.n_range[0]}..{report.n_range[1]}",
        f"checks: {','.join(report.checks)}",
        f"graphs: {report.graphs_enumerated} enumerated, {report.graphs_scanned} scanned, "
        f"{report.connected} connected",
    ]
    for n, kinds in sorted(report.equality_census.items(), key=lambda item: int(item[0])):
        if kinds:
            detail = ", ".join(f"{kind} {count}" for kind, count in sorted(kinds.items()))
            lines.append(f"equality census n={n}: {sum(kinds.values())} ({detail})")
    if report.worst_slack is not None:
        lines.append(f"worst slack: {report.worst_slack:.6g}")
    if report.thm3_extrapolation_candidates:
        count = report.thm3_extrapolation_candidates
        lines.append(f"min-degree formula beyond its range fails on {count} graphs")
    lines.append(f"violations: {len(report.violations)}")
    lines += [f"  {v.claim} on {v.graph6}: {v.observed} (expected {v.expected})" for v in report.violations]
    lines.append(f"runtime: {report.runtime:.2f}s")
    return lines


def cmd_sweep(args: argparse.Namespace) -> int:
    checks = args.checks.split(",") if args.checks else None
    report = sweep(args.n_min, args.n_max, checks=checks, settings=_settings(args), long_run=args.long_run)
    _emit(args, report, _sweep_lines(report))
    return 0 if report.passed else 1


def cmd_random_sweep(args: argparse.Namespace) -> int:
    checks = args.checks.split(",") if args.checks else None
    report = random_sweep(args.n, args.trials, args.seed, checks=checks, settings=_settings(args))
    _emit(args, report, _sweep_lines(report))
    return 0 if report.passed else 1


def cmd_counterexample(args: argparse.Namespace) -> int:
    report = edge_removal_demo(args.k)
    lines = [
        f"glued complete k={report.k} (n={report.n}): lambda_n = {report.base_lambda:.12f}",
        f"target: {report.target}",
    ]
    for e in report.additions:
        marker = "" if e.exceeds else "  NOT ABOVE"
        lines.append(f"  + ({e.u}, {e.v}): lambda_n = {e.lambda_n:.12f}{marker}")
    lines.append(f"every added edge raises lambda_n: {str(report.demonstrated).lower()}")
    _emit(args, report, lines)
    return 0 if report.demonstrated else 1


def cmd_lemma(args: argparse.Namespace) -> int:
    report = lemma_grid(args.n_max)
    lines = [
        f"points: {report.points} (n = {report.n_range[0]}..{report.n_range[1]})",
        f"min slack: {report.min_slack:.3e} at (n, d_v, d_w) = {report.argmin}",
        f"boundary gap (d_w = n-1-d_v): {report.boundary_gap:.3e}",
        f"failures: {len(report.failures)}",
    ]
    _emit(args, report, lines)
    return 0 if report.passed else 1


def cmd_verify(args: argparse.Namespace) -> int:
    record = CertificateRecord.model_validate_json(Path(args.record).read_bytes())
    verified = verify_certificate_record(record)
    if args.json:
        print(json.dumps({"graph6": record.graph6, "method": record.method, "verified": verified}))
    else:
        print(f"{record.method} certificate for {record.graph6}: {'verified' if verified else 'REJECTED'}")
    return 0 if verified else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable output")
    common.add_argument("--verbose", action="store_true", help="Debug logging")

    parser = argparse.ArgumentParser(prog="lapgap", description="Normalized Laplacian spectral gap toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="Print the normalized Laplacian spectrum")
    p.add_argument("file")
    p.add_argument("--solver", choices=SOLVERS, default="jacobi")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("bounds", parents=[common], help="Print every applicable lower bound")
    p.add_argument("file")
    p.add_argument("--spectrum", action="store_true", help="Also compute lambda_n")
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("certify", parents=[common], help="Build a Rayleigh-quotient certificate")
    p.add_argument("file")
    p.add_argument("--method", choices=("thm1", "thm3"), default="thm1")
    p.add_argument("--verify", action="store_true", help="Re-verify the serialized record")
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("classify", parents=[common], help="Classify the equality case")
    p.add_argument("file")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("sweep", parents=[common], help="Exhaustive verification sweep")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--checks", default=None, help="Comma-separated subset of checks")
    p.add_argument("--long-run", action="store_true", help="Allow n = 8")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-progress", action="store_true")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("random-sweep", parents=[common], help="Randomized verification sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--checks", default=None)
    p.add_argument("--no-progress", action="store_true")
    p.set_defaults(handler=cmd_random_sweep)

    p = sub.add_parser("counterexample", parents=[common], help="Edge-removal demonstration")
    p.add_argument("--k", type=int, default=4)
    p.set_defaults(handler=cmd_counterexample)

    p = sub.add_parser("lemma", parents=[common], help="Brute-force the minimum-degree lemma")
    p.add_argument("--n-max", type=int, default=200)
    p.set_defaults(handler=cmd_lemma)

    p = sub.add_parser("verify", parents=[common], help="Re-verify a serialized certificate")
    p.add_argument("record")
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(Settings.from_env().log_level, verbose=args.verbose)
    try:
        return args.handler(args)
    except LapgapError as e:
        logger.error(f"{args.command}: {e}")
        return 1
    except (OSError, ValidationError) as e:
        logger.error(f"{args.command}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
