"""
Verification sweeps over labeled graphs.

The exhaustive sweep splits the edge-bitmask space of each n into contiguous ranges and
processes them in a process pool; each range yields a partial :class:`SweepReport` and
the partial reports are summed. Inside a range, graphs are eigensolved in batches and
then run through :class:`GraphChecker`.
"""

from concurrent.futures import ProcessPoolExecutor, as_completed
import math
import time
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from loguru import logger
import numpy as np
from tqdm import tqdm

from lapgap.bounds import classical_lower_bound, thm1_lower_bound, thm3_lower_bound
from lapgap.certify import certificate_record, certify_thm1, certify_thm3, verify_certificate_record
from lapgap.config import ACCEPT_TOL, EXHAUSTIVE_MAX_N, TRACE_TOL, Settings
from lapgap.errors import ParameterError
from lapgap.generators import labeled_graph_count, random_connected_graph
from lapgap.graph import (
    Graph,
    connected_components,
    graph_from_mask,
    has_bipartite_component,
    is_complete,
    vertex_pairs,
)
from lapgap.graph_io import to_graph6
from lapgap.records import CertificateRecord, ExtrapolationCandidate, SweepReport, Violation
from lapgap.rigidity import classify_equality
from lapgap.spectral import batch_eigenvalues
from lapgap.utils.log_timing import context_log

CHECKS = ("thm1", "thm2", "thm3", "classical", "bipartite", "spectral", "certificates")
RANDOM_CHECKS = ("thm1", "thm3", "spectral", "certificates")
LONG_RUN_MAX_N = 8
RANDOM_MAX_N = 32
MAX_EXAMPLES = 20


def normalize_checks(checks: Optional[Iterable[str]], default: Sequence[str] = CHECKS) -> Tuple[str, ...]:
    if checks is None:
        return tuple(default)
    selected = {check.strip().lower() for check in checks if check.strip()}
    unknown = selected - set(CHECKS)
    if unknown:
        raise ParameterError(f"unknown checks {sorted(unknown)}; expected a subset of {list(CHECKS)}")
    return tuple(check for check in CHECKS if check in selected)


class GraphChecker:
    """
    Runs the selected claims on graphs of one order and records failures as violations.

    Each ``check`` call takes a graph without isolated vertices and its ascending
    eigenvalues; the findings accumulate on ``self.report``.
    """

    def __init__(self, n: int, report: SweepReport):
        self.n = n
        self.report = report
        self.checks = set(report.checks)
        self.classical = float(classical_lower_bound(n))
        self.thm1 = float(thm1_lower_bound(n)) if n >= 3 else None
        self.census: Dict[str, int] = report.equality_census.setdefault(str(n), {})

    def _violation(self, g: Graph, claim: str, observed: str, expected: str) -> None:
        graph6 = to_graph6(g)
        logger.warning(f"Violation of {claim} on {graph6}: observed {observed}, expected {expected}")
        self.report.violations.append(
            Violation(graph6=graph6, claim=claim, observed=observed, expected=expected)
        )

    def _slack(self, value: float) -> None:
        worst = self.report.worst_slack
        self.report.worst_slack = value if worst is None else min(worst, value)

    def check(self, g: Graph, eigenvalues: np.ndarray) -> None:
        lam = float(eigenvalues[-1])
        complete = is_complete(g)
        components = connected_components(g).count
        self.report.graphs_scanned += 1
        if components == 1:
            self.report.connected += 1

        if "spectral" in self.checks:
            self._check_spectral(g, eigenvalues, components)
        if "classical" in self.checks:
            if lam < self.classical - ACCEPT_TOL or complete != (abs(lam - self.classical) <= ACCEPT_TOL):
                expected = f">= {self.classical:.12f}, equal iff complete"
                self._violation(g, "classical", f"{lam:.12f}", expected)
        if "thm1" in self.checks and not complete and lam < self.thm1 - ACCEPT_TOL:
            self._violation(g, "thm1", f"{lam:.12f}", f">= {self.thm1:.12f}")
        if "thm2" in self.checks and not complete:
            self._check_rigidity(g, lam)
        if "thm3" in self.checks and not complete:
            self._check_min_degree(g, lam)
        if "bipartite" in self.checks:
            top = abs(lam - 2.0) <= ACCEPT_TOL
            if top != has_bipartite_component(g):
                expected = "lambda_n = 2 iff some component is bipartite"
                self._violation(g, "bipartite", f"lambda_n={lam:.12f}", expected)
        if "certificates" in self.checks and not complete:
            self._check_certificates(g, lam)

    def _check_spectral(self, g: Graph, eigenvalues: np.ndarray, components: int) -> None:
        zeros = int(np.sum(np.abs(eigenvalues) <= TRACE_TOL))
        trace = float(np.sum(eigenvalues))
        in_range = eigenvalues[0] >= -TRACE_TOL and eigenvalues[-1] <= 2.0 + TRACE_TOL
        if abs(trace - self.n) > TRACE_TOL or not in_range or zeros != components:
            self._violation(
                g,
                "spectral",
                f"trace={trace:.12f}, range=[{eigenvalues[0]:.3e}, {eigenvalues[-1]:.12f}], zeros={zeros}",
                f"trace={self.n}, range within [0, 2], zeros={components}",
            )

    def _check_rigidity(self, g: Graph, lam: float) -> None:
        verdict = classify_equality(g, encode=False)
        spectral_equality = abs(lam - self.thm1) <= ACCEPT_TOL
        if verdict.is_equality:
            self.census[verdict.kind.value] = self.census.get(verdict.kind.value, 0) + 1
        if verdict.is_equality != spectral_equality:
            observed = f"{verdict.kind.value}, lambda_n={lam:.12f}"
            self._violation(g, "thm2", observed, f"equality iff {self.thm1:.12f}")

    def _check_min_degree(self, g: Graph, lam: float) -> None:
        d_min = g.min_degree
        if 2 * d_min <= self.n - 1:
            psi = thm3_lower_bound(self.n, d_min)
            if lam < psi - ACCEPT_TOL:
                self._violation(g, "thm3", f"{lam:.12f}", f">= {psi:.12f}")
            return
        formula = 1.0 + 1.0 / math.sqrt(d_min * (self.n - 1 - d_min))
        if lam < formula - ACCEPT_TOL:
            self.report.thm3_extrapolation_candidates += 1
            if len(self.report.thm3_extrapolation_examples) < MAX_EXAMPLES:
                self.report.thm3_extrapolation_examples.append(
                    ExtrapolationCandidate(
                        graph6=to_graph6(g), n=self.n, d_min=d_min, lambda_n=lam, formula=formula
                    )
                )

    def _check_certificates(self, g: Graph, lam: float) -> None:
        certifiers = [("certificate_thm1", certify_thm1)]
        if 2 * g.min_degree <= self.n - 1:
            certifiers.append(("certificate_thm3", certify_thm3))
        for claim, certifier in certifiers:
            cert, audit = certifier(g)
            self._slack(audit.worst_slack)
            if not audit.holds:
                observed = f"worst slack {audit.worst_slack:.3e}"
                self._violation(g, claim, observed, ">= -1e-9 with a monotone chain")
            if not cert.bound - ACCEPT_TOL <= cert.rayleigh <= lam + ACCEPT_TOL:
                expected = f"in [{cert.bound:.12f}, {lam:.12f}]"
                self._violation(g, claim, f"rayleigh {cert.rayleigh:.12f}", expected)
            if self.report.mode == "random":
                self._check_record(g, claim, certificate_record(g, cert, audit))

    def _check_record(self, g: Graph, claim: str, record: CertificateRecord) -> None:
        restored = CertificateRecord.model_validate_json(record.model_dump_json())
        if not verify_certificate_record(restored):
            self._violation(g, f"{claim}_record", "record rejected", "re-verifies from its JSON record")


def _check_batch(checker: GraphChecker, graphs: List[Graph], settings: Settings, solver: str) -> None:
    if not graphs:
        return
    eigenvalues = batch_eigenvalues(
        graphs, solver=solver, tol=settings.eigen_tol, max_sweeps=settings.max_sweeps
    )
    for g, values in zip(graphs, eigenvalues):
        checker.check(g, values)


def sweep_range(
    n: int,
    start: int,
    stop: int,
    checks: Sequence[str],
    settings: Settings,
    solver: str = "jacobi",
) -> SweepReport:
    """Check every graph on ``n`` vertices with edge bitmask in ``[start, stop)``."""
    report = SweepReport(n_range=(n, n), checks=list(checks))
    checker = GraphChecker(n, report)
    pairs = vertex_pairs(n)
    batch: List[Graph] = []
    for mask in range(start, stop):
        report.graphs_enumerated += 1
        g = graph_from_mask(n, mask, pairs)
        if not all(g.rows):
            continue
        batch.append(g)
        if len(batch) >= settings.batch_size:
            _check_batch(checker, batch, settings, solver)
            batch = []
    _check_batch(checker, batch, settings, solver)
    return report


def _chunks(n: int, chunk_size: int) -> List[Tuple[int, int, int]]:
    total = labeled_graph_count(n)
    return [(n, start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]


def sweep(
    n_min: int,
    n_max: int,
    checks: Optional[Iterable[str]] = None,
    settings: Optional[Settings] = None,
    long_run: bool = False,
    solver: str = "jacobi",
) -> SweepReport:
    """
    Exhaustive verification over every labeled graph with n_min <= n <= n_max.

    Args:
        n_min: Smallest order, at least 3.
        n_max: Largest order, at most 7 (8 with ``long_run``).
        checks: Subset of :data:`CHECKS`; all of them by default.
        settings: Worker count, chunk and batch sizes; read from the environment by default.
        long_run: Allow n = 8.
        solver: Eigensolver for the batched spectra.

    Returns:
        The merged report. Failures are violations in the report, never exceptions.
    """
    cap = LONG_RUN_MAX_N if long_run else EXHAUSTIVE_MAX_N
    if not 3 <= n_min <= n_max <= cap:
        raise ParameterError(f"exhaustive sweep needs 3 <= n_min <= n_max <= {cap}, got ({n_min}, {n_max})")
    settings = settings or Settings.from_env()
    selected = normalize_checks(checks)
    tasks = [task for n in range(n_min, n_max + 1) for task in _chunks(n, settings.chunk_size)]
    report = SweepReport(n_range=(n_min, n_max), checks=list(selected))
    started = time.perf_counter()

    with context_log(f"sweep n={n_min}..{n_max} checks={','.join(selected)} workers={settings.workers}"):
        progress = tqdm(total=len(tasks), desc="sweep", unit="chunk", disable=not settings.progress)
        if settings.workers == 1:
            for task in tasks:
                report = report.merge(sweep_range(*task, selected, settings, solver), MAX_EXAMPLES)
                progress.update()
        else:
            with ProcessPoolExecutor(max_workers=settings.workers) as pool:
                futures = [pool.submit(sweep_range, *task, selected, settings, solver) for task in tasks]
                for future in as_completed(futures):
                    report = report.merge(future.result(), MAX_EXAMPLES)
                    progress.update()
        progress.close()

    report.runtime = time.perf_counter() - started
    logger.info(
        f"Scanned {report.graphs_scanned} of {report.graphs_enumerated} graphs "
        f"({report.connected} connected), {len(report.violations)} violations"
    )
    return report


def random_sweep(
    n: int,
    trials: int,
    seed: int,
    checks: Optional[Iterable[str]] = None,
    settings: Optional[Settings] = None,
    solver: str = "jacobi",
) -> SweepReport:
    """
    Check ``trials`` connected samples of G(n, 1/2), deterministic for a fixed seed.

    Runs the bound soundness checks and certificate audits by default. Each certificate
    is also serialized to JSON and re-verified from the record alone.
    """
    if not 3 <= n <= RANDOM_MAX_N:
        raise ParameterError(f"random sweep needs 3 <= n <= {RANDOM_MAX_N}, got {n}")
    if trials < 1:
        raise ParameterError(f"random sweep needs at least one trial, got {trials}")
    settings = settings or Settings.from_env()
    selected = normalize_checks(checks, default=RANDOM_CHECKS)
    rng = np.random.default_rng(seed)
    report = SweepReport(mode="random", n_range=(n, n), checks=list(selected), seed=seed)
    checker = GraphChecker(n, report)
    started = time.perf_counter()

    with context_log(f"random sweep n={n} trials={trials} seed={seed}"):
        batch: List[Graph] = []
        for _ in tqdm(range(trials), desc="random sweep", unit="graph", disable=not settings.progress):
            batch.append(random_connected_graph(n, rng))
            report.graphs_enumerated += 1
            if len(batch) >= settings.batch_size:
                _check_batch(checker, batch, settings, solver)
                batch = []
        _check_batch(checker, batch, settings, solver)

    report.runtime = time.perf_counter() - started
    return report
