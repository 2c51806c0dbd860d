import math

from helpers import C5, K3_K3, oracle_eigenvalues
import numpy as np
import pytest

from lapgap.config import Settings
from lapgap.errors import ParameterError
from lapgap.generators import enumerate_labeled_graphs, has_no_isolated_vertex
from lapgap.harness import (
    CHECKS,
    RANDOM_CHECKS,
    GraphChecker,
    normalize_checks,
    random_sweep,
    sweep,
    sweep_range,
)
from lapgap.records import SweepReport, Violation


def quiet(**overrides) -> Settings:
    return Settings(workers=1, progress=False, **overrides)


# Check selection


def test_normalize_checks():
    assert normalize_checks(None) == CHECKS
    assert normalize_checks(None, default=RANDOM_CHECKS) == RANDOM_CHECKS
    assert normalize_checks(["spectral", " THM1 ", ""]) == ("thm1", "spectral")
    with pytest.raises(ParameterError, match="thm9"):
        normalize_checks(["thm1", "thm9"])


# Graph checker


def test_checker_accepts_true_spectra():
    """Test that true spectra pass every check."""
    report = SweepReport(n_range=(6, 6), checks=list(CHECKS))
    checker = GraphChecker(6, report)
    checker.check(K3_K3, oracle_eigenvalues(K3_K3))
    assert report.passed
    assert report.graphs_scanned == 1
    assert report.connected == 0
    # the minimum-degree certificate is the tighter of the two
    assert report.worst_slack == pytest.approx(1.5 - (1 + 1 / math.sqrt(6)))


def test_checker_reports_a_wrong_spectrum():
    """Test that a wrong spectrum is reported as violations."""
    report = SweepReport(n_range=(5, 5), checks=["spectral", "thm1"])
    checker = GraphChecker(5, report)
    checker.check(C5, np.array([0.0, 0.5, 1.0, 1.2, 1.4]))
    assert {v.claim for v in report.violations} == {"spectral", "thm1"}
    assert all(v.graph6 == "Dhc" for v in report.violations)


# Exhaustive sweeps


def test_sweep_small_orders():
    """Test the exhaustive sweep and its census for n = 3..5."""
    report = sweep(3, 5, settings=quiet(chunk_size=100))
    assert report.passed, report.violations
    assert report.mode == "exhaustive"
    assert report.n_range == (3, 5)
    assert report.graphs_enumerated == 8 + 64 + 1024
    assert report.graphs_scanned == 4 + 41 + 768
    assert report.connected == 4 + 38 + 728
    assert report.equality_census["5"] == {"SingleEdgeComplement": 10, "BalancedBipartiteComplement": 15}
    assert [report.census_total(n) for n in (3, 4, 5)] == [3, 6, 25]
    assert report.worst_slack >= -1e-9
    assert report.thm3_extrapolation_candidates > 0
    assert all(c.lambda_n < c.formula for c in report.thm3_extrapolation_examples)
    assert report.runtime > 0


def test_sweep_census_on_six_vertices():
    """Test that every check holds on all graphs with six vertices."""
    report = sweep(6, 6, settings=quiet())
    assert report.passed, report.violations[:5]
    assert report.checks == list(CHECKS)
    assert report.census_total(6) == 15
    assert report.graphs_scanned == 27449
    assert report.worst_slack >= -1e-9


def test_parallel_sweep_matches_serial_sweep():
    """Test that a process pool gives the same report as one worker."""
    serial = sweep(4, 5, checks=["thm1", "thm2"], settings=quiet(chunk_size=64))
    settings = Settings(workers=2, chunk_size=64, progress=False)
    parallel = sweep(4, 5, checks=["thm1", "thm2"], settings=settings)
    assert parallel.graphs_scanned == serial.graphs_scanned
    assert parallel.equality_census == serial.equality_census
    assert parallel.passed


def test_sweep_range_counts():
    """Test that a bitmask range scans only graphs without isolated vertices."""
    report = sweep_range(4, 0, 32, ("thm1",), quiet())
    assert report.graphs_enumerated == 32
    expected = enumerate_labeled_graphs(4, has_no_isolated_vertex, stop=32)
    assert report.graphs_scanned == sum(1 for _ in expected)
    assert report.passed


@pytest.mark.parametrize("n_min, n_max", [(2, 4), (5, 4), (3, 8)])
def test_sweep_rejects_bad_ranges(n_min, n_max):
    """Test that bad order ranges raise ParameterError."""
    with pytest.raises(ParameterError):
        sweep(n_min, n_max, settings=quiet())


@pytest.mark.slow
def test_equality_census_on_seven_vertices():
    """Test every check and the equality census on all graphs with seven vertices."""
    report = sweep(7, 7, settings=Settings(progress=False))
    assert report.passed, report.violations[:5]
    assert report.checks == list(CHECKS)
    assert report.worst_slack >= -1e-9
    assert report.equality_census["7"] == {"SingleEdgeComplement": 21, "BalancedBipartiteComplement": 70}
    assert report.census_total(7) == 91
    assert report.graphs_scanned == 1887284
    assert report.connected == 1866256


# Random sweeps


def test_random_sweep_is_deterministic():
    """Test that a seeded random sweep repeats exactly."""
    first = random_sweep(9, 40, seed=3, settings=quiet(batch_size=16))
    second = random_sweep(9, 40, seed=3, settings=quiet())
    assert first.passed
    assert first.mode == "random" and first.seed == 3
    assert first.checks == list(RANDOM_CHECKS)
    assert first.graphs_scanned == first.connected == 40
    assert first.worst_slack == second.worst_slack


def test_random_sweep_on_three_vertices():
    """Test the random sweep at its smallest order."""
    report = random_sweep(3, 20, seed=0, settings=quiet())
    assert report.passed
    assert report.graphs_scanned == 20


@pytest.mark.slow
def test_random_sweep_at_scale():
    """Test certificates on 10000 random graphs with 32 vertices."""
    report = random_sweep(32, 10000, seed=1, settings=Settings(progress=False))
    assert report.passed, report.violations[:5]
    assert report.graphs_scanned == 10000
    assert report.worst_slack >= -1e-9


def test_random_sweep_reports_rejected_records(monkeypatch):
    """Test that a certificate whose record fails re-verification is a violation."""
    monkeypatch.setattr("lapgap.harness.verify_certificate_record", lambda record: False)
    report = random_sweep(9, 3, seed=2, checks=["certificates"], settings=quiet())
    assert not report.passed
    assert "certificate_thm1_record" in {v.claim for v in report.violations}


def test_exhaustive_sweep_skips_record_checks(monkeypatch):
    """Test that records are only round-tripped in random sweeps."""
    monkeypatch.setattr("lapgap.harness.verify_certificate_record", lambda record: False)
    assert sweep(4, 4, checks=["certificates"], settings=quiet()).passed


@pytest.mark.parametrize("n, trials", [(2, 10), (33, 10), (8, 0)])
def test_random_sweep_rejects_bad_parameters(n, trials):
    """Test that bad orders or trial counts raise ParameterError."""
    with pytest.raises(ParameterError):
        random_sweep(n, trials, seed=1, settings=quiet())


# Reports


def test_reports_merge_additively():
    a = SweepReport(
        n_range=(5, 5),
        checks=["thm2"],
        graphs_scanned=3,
        equality_census={"5": {"SingleEdgeComplement": 2}},
        worst_slack=0.5,
    )
    b = SweepReport(
        n_range=(5, 5),
        checks=["thm2"],
        graphs_scanned=4,
        equality_census={"5": {"SingleEdgeComplement": 1, "BalancedBipartiteComplement": 3}},
        violations=[Violation(graph6="Dhc", claim="thm2", observed="x", expected="y")],
    )
    merged = a.merge(b)
    assert merged.graphs_scanned == 7
    assert merged.equality_census == {"5": {"SingleEdgeComplement": 3, "BalancedBipartiteComplement": 3}}
    assert merged.worst_slack == 0.5
    assert not merged.passed
    assert a.passed
