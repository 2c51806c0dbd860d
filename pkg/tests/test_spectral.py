import math

from helpers import C5, STAR5, oracle_eigenvalues, random_graphs
from hypothesis import given, settings
from hypothesis import strategies as st
import numpy as np
import pytest

from lapgap.errors import IsolatedVertexError, ParameterError, ZeroFunctionError
from lapgap.generators import complete, complete_bipartite, complete_minus_edge, cycle, glued_complete
from lapgap.graph import disjoint_union, from_edge_list
from lapgap.spectral import (
    apply_laplacian,
    batch_eigenvalues,
    degree_inner_product,
    group_eigenvalues,
    indicator,
    largest_eigenvalue,
    rayleigh_quotient,
    spectrum,
    verify_eigenpair,
)

# Closed forms


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_complete_graph_spectrum(n):
    """Test the spectrum of K_n."""
    groups = spectrum(complete(n)).multiplicities()
    assert [mult for _, mult in groups] == [1, n - 1]
    assert [value for value, _ in groups] == pytest.approx([0.0, n / (n - 1)])


@pytest.mark.parametrize("a, b", [(1, 4), (2, 3), (3, 3)])
def test_complete_bipartite_spectrum(a, b):
    """Test the spectrum of K_{a,b}."""
    values = spectrum(complete_bipartite(a, b)).eigenvalues
    expected = [0.0] + [1.0] * (a + b - 2) + [2.0]
    np.testing.assert_allclose(values, expected, atol=1e-10)


@pytest.mark.parametrize("n", [3, 5, 6, 9])
def test_cycle_spectrum(n):
    """Test the spectrum of C_n against 1 - cos(2 pi k/n)."""
    expected = sorted(1 - math.cos(2 * math.pi * k / n) for k in range(n))
    np.testing.assert_allclose(spectrum(cycle(n)).eigenvalues, expected, atol=1e-10)


@pytest.mark.parametrize("n", [3, 4, 6, 7])
def test_complete_minus_edge_attains_non_complete_bound(n):
    """Test that K_n minus an edge has lambda_n = (n+1)/(n-1)."""
    assert largest_eigenvalue(complete_minus_edge(n)) == pytest.approx((n + 1) / (n - 1), abs=1e-10)


@pytest.mark.parametrize("n", [5, 7, 9, 13])
def test_extremal_family_spectra(n):
    """Test the spectra of the extremal families."""
    minus_edge = sorted([0.0, 1.0] + [n / (n - 1)] * (n - 3) + [(n + 1) / (n - 1)])
    np.testing.assert_allclose(spectrum(complete_minus_edge(n)).eigenvalues, minus_edge, atol=1e-9)
    glued = [0.0, 2 / (n - 1)] + [(n + 1) / (n - 1)] * (n - 2)
    np.testing.assert_allclose(spectrum(glued_complete((n + 1) // 2)).eigenvalues, glued, atol=1e-9)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_glued_complete_attains_non_complete_bound(k):
    """Test that glued cliques have lambda_n = (n+1)/(n-1)."""
    n = 2 * k - 1
    assert largest_eigenvalue(glued_complete(k)) == pytest.approx((n + 1) / (n - 1), abs=1e-10)


def test_solvers_agree_with_networkx_oracle():
    """Test both solvers against the networkx spectrum."""
    for g in random_graphs(9, 15, seed=21, p=0.4):
        expected = oracle_eigenvalues(g)
        np.testing.assert_allclose(spectrum(g).eigenvalues, expected, atol=1e-10)
        np.testing.assert_allclose(spectrum(g, solver="lapack").eigenvalues, expected, atol=1e-10)


def test_batch_eigenvalues():
    graphs = random_graphs(6, 12, seed=8)
    values = batch_eigenvalues(graphs)
    assert values.shape == (12, 6)
    for g, row in zip(graphs, values):
        np.testing.assert_allclose(row, oracle_eigenvalues(g), atol=1e-10)


def test_unknown_solver():
    with pytest.raises(ParameterError):
        spectrum(C5, solver="arpack")


# Spectrum object


def test_eigenfunctions_are_degree_orthonormal():
    """Test that eigenfunctions are orthonormal in the degree inner product."""
    result = spectrum(STAR5)
    F = result.eigenvectors
    gram = np.array([[degree_inner_product(STAR5, F[:, i], F[:, j]) for j in range(5)] for i in range(5)])
    np.testing.assert_allclose(gram, np.eye(5), atol=1e-10)
    assert np.max(result.residuals) < 1e-10
    for j in range(5):
        assert verify_eigenpair(STAR5, result.eigenvalues[j], result.eigenfunction(j), 1e-10)


def test_zero_multiplicity_counts_components():
    """Test that the multiplicity of 0 is the component count."""
    g = disjoint_union(complete(3), cycle(4), complete(2))
    result = spectrum(g)
    assert result.zero_multiplicity == 3
    record = result.to_record("graph")
    assert record.component_count == 3
    assert record.n == 9
    assert record.eigenvalues == sorted(record.eigenvalues)
    assert record.max_residual < 1e-10


def test_group_eigenvalues():
    groups = group_eigenvalues([0.0, 1.0, 1.0 + 1e-10, 2.0])
    assert [mult for _, mult in groups] == [1, 2, 1]
    assert [value for value, _ in groups] == pytest.approx([0.0, 1.0, 2.0])


# Operator and Rayleigh quotient


def test_apply_laplacian_on_cycle():
    """Test L applied to an indicator on the 5-cycle."""
    f = np.array([1.0, -1.0, 1.0, 0.0, 0.0])
    np.testing.assert_allclose(apply_laplacian(C5, f), [1.5, -2.0, 1.5, -0.5, -0.5])


def test_rayleigh_quotient_bounds_the_spectrum():
    """Test that Rayleigh quotients lie between lambda_1 and lambda_n."""
    for g in random_graphs(7, 10, seed=13):
        lam = largest_eigenvalue(g)
        rng = np.random.default_rng(g.edge_count)
        for _ in range(5):
            q = rayleigh_quotient(g, rng.standard_normal(7))
            assert -1e-12 <= q <= lam + 1e-12


def test_rayleigh_of_indicator_of_an_edge_endpoint():
    """Test that the indicator of a vertex has quotient 1."""
    assert rayleigh_quotient(STAR5, indicator(5, [0])) == pytest.approx(1.0)


CYCLE_FUNCTIONS = st.lists(st.floats(-10, 10), min_size=5, max_size=5)


@settings(max_examples=50, deadline=None)
@given(CYCLE_FUNCTIONS, CYCLE_FUNCTIONS)
def test_laplacian_is_self_adjoint(f, h):
    """Test that L is self-adjoint in the degree inner product."""
    left = degree_inner_product(C5, apply_laplacian(C5, f), h)
    right = degree_inner_product(C5, f, apply_laplacian(C5, h))
    assert left == pytest.approx(right, abs=1e-8)


# Errors


def test_isolated_vertex_is_rejected():
    """Test that isolated vertices are rejected."""
    g = from_edge_list(3, [(0, 1)])
    with pytest.raises(IsolatedVertexError) as excinfo:
        spectrum(g)
    assert excinfo.value.vertex == 2
    with pytest.raises(IsolatedVertexError):
        batch_eigenvalues([C5, from_edge_list(5, [(0, 1), (1, 2), (2, 3)])])


def test_zero_function_is_rejected():
    """Test that the zero function has no Rayleigh quotient."""
    with pytest.raises(ZeroFunctionError):
        rayleigh_quotient(C5, np.zeros(5))
    with pytest.raises(ZeroFunctionError):
        verify_eigenpair(C5, 1.0, np.zeros(5), 1e-10)


def test_bad_vertex_function_shape():
    """Test that functions of the wrong length are rejected."""
    with pytest.raises(ParameterError):
        rayleigh_quotient(C5, [1.0, 2.0])


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 12), st.integers(0, 2**32 - 1))
def test_spectral_sanity_on_random_graphs(n, seed):
    """Test trace, range and zero count on random graphs."""
    g = random_graphs(n, 1, seed=seed, p=0.4)[0]
    f, h = np.random.default_rng(seed).standard_normal((2, n))
    left = degree_inner_product(g, apply_laplacian(g, f), h)
    assert left == pytest.approx(degree_inner_product(g, f, apply_laplacian(g, h)), abs=1e-10)
    values = spectrum(g).eigenvalues
    assert abs(values[0]) <= 1e-9
    assert values.sum() == pytest.approx(n, abs=1e-8)
    assert values[-1] <= 2 + 1e-9
