"""
Normalized Laplacian operator, degree inner product and spectra.

    Lf(x) = (1/d(x)) * sum_{y ~ x} (f(x) - f(y))
    <f, h> = sum_x f(x) h(x) d(x)

L is self-adjoint for this inner product. Its spectrum is computed from the similar
symmetric form S = I - D^{-1/2} A D^{-1/2}; eigenvectors are mapped back to
eigenfunctions of L by dividing by sqrt(d), which makes them orthonormal in <., .>.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from lapgap.config import DEFAULT_EIGEN_TOL, DEFAULT_MAX_SWEEPS, MULTIPLICITY_TOL
from lapgap.errors import IsolatedVertexError, ParameterError, ZeroFunctionError
from lapgap.graph import Graph
from lapgap.jacobi import jacobi_eigensolve
from lapgap.records import SpectrumRecord

# A real value per vertex; the universe of witnesses and eigenfunctions.
VertexFunction = np.ndarray

SOLVERS = ("jacobi", "lapack")


def adjacency_matrix(g: Graph) -> np.ndarray:
    rows = np.array(g.rows, dtype=np.uint64)
    bits = (rows[:, None] >> np.arange(g.n, dtype=np.uint64)) & np.uint64(1)
    return bits.astype(np.float64)


def adjacency_tensor(graphs: Sequence[Graph]) -> np.ndarray:
    """Stacked adjacency matrices, shape ``(B, n, n)``; all graphs must share ``n``."""
    if not graphs:
        raise ParameterError("adjacency_tensor needs at least one graph")
    n = graphs[0].n
    if any(g.n != n for g in graphs):
        raise ParameterError("all graphs in a batch must have the same vertex count")
    rows = np.array([g.rows for g in graphs], dtype=np.uint64)
    bits = (rows[:, :, None] >> np.arange(n, dtype=np.uint64)) & np.uint64(1)
    return bits.astype(np.float64)


def degree_vector(g: Graph) -> np.ndarray:
    """Degrees as floats; raises :class:`IsolatedVertexError` when some degree is 0."""
    d = np.array(g.degrees(), dtype=np.float64)
    isolated = np.flatnonzero(d == 0)
    if isolated.size:
        raise IsolatedVertexError(int(isolated[0]))
    return d


def as_vertex_function(g: Graph, f) -> VertexFunction:
    values = np.asarray(f, dtype=np.float64)
    if values.shape != (g.n,):
        raise ParameterError(f"vertex function must have shape ({g.n},), got {values.shape}")
    if not np.all(np.isfinite(values)):
        raise ParameterError("vertex function has non-finite entries")
    return values


def indicator(n: int, vertices) -> VertexFunction:
    """1_P for a vertex set P."""
    f = np.zeros(n)
    f[list(vertices)] = 1.0
    return f


def apply_laplacian(g: Graph, f) -> VertexFunction:
    d = degree_vector(g)
    values = as_vertex_function(g, f)
    return values - (adjacency_matrix(g) @ values) / d


def degree_inner_product(g: Graph, f, h) -> float:
    d = degree_vector(g)
    return float(np.sum(as_vertex_function(g, f) * as_vertex_function(g, h) * d))


def rayleigh_quotient(g: Graph, f) -> float:
    """<Lf, f> / <f, f>; any nonzero f gives a lower bound on the largest eigenvalue."""
    values = as_vertex_function(g, f)
    denominator = degree_inner_product(g, values, values)
    if denominator == 0.0:
        raise ZeroFunctionError("Rayleigh quotient of the zero function")
    return degree_inner_product(g, apply_laplacian(g, values), values) / denominator


def symmetric_form(g: Graph) -> np.ndarray:
    scale = 1.0 / np.sqrt(degree_vector(g))
    return np.eye(g.n) - adjacency_matrix(g) * np.outer(scale, scale)


def symmetric_forms(graphs: Sequence[Graph]) -> np.ndarray:
    A = adjacency_tensor(graphs)
    d = A.sum(axis=2)
    if np.any(d == 0):
        raise IsolatedVertexError(int(np.argwhere(d == 0)[0][1]))
    scale = 1.0 / np.sqrt(d)
    return np.eye(A.shape[1]) - A * scale[:, :, None] * scale[:, None, :]


def group_eigenvalues(eigenvalues, tol: float = MULTIPLICITY_TOL) -> List[Tuple[float, int]]:
    """Cluster sorted eigenvalues whose consecutive gaps are within ``tol``; returns (mean, multiplicity)."""
    values = np.sort(np.asarray(eigenvalues, dtype=np.float64))
    groups: List[List[float]] = []
    for value in values:
        if groups and value - groups[-1][-1] <= tol:
            groups[-1].append(float(value))
        else:
            groups.append([float(value)])
    return [(float(np.mean(group)), len(group)) for group in groups]


@dataclass(frozen=True)
class Spectrum:
    """Spectrum of the normalized Laplacian.

    Attributes:
    - eigenvalues: Ascending eigenvalues lambda_1 <= ... <= lambda_n.
    - eigenvectors: Column j is an eigenfunction of L for eigenvalue j, unit norm in <., .>.
    - residuals: Per pair, max_x |Lf(x) - lambda f(x)|.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray

    @property
    def n(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    def eigenfunction(self, j: int) -> VertexFunction:
        return self.eigenvectors[:, j]

    def multiplicities(self, tol: float = MULTIPLICITY_TOL) -> List[Tuple[float, int]]:
        return group_eigenvalues(self.eigenvalues, tol)

    def multiplicity_of(self, value: float, tol: float = MULTIPLICITY_TOL) -> int:
        return int(np.sum(np.abs(self.eigenvalues - value) <= tol))

    @property
    def zero_multiplicity(self) -> int:
        return self.multiplicity_of(0.0)

    def to_record(self, graph6: Optional[str] = None) -> SpectrumRecord:
        return SpectrumRecord(
            graph6=graph6,
            n=self.n,
            eigenvalues=[float(x) for x in self.eigenvalues],
            max_residual=float(np.max(self.residuals)),
            component_count=self.zero_multiplicity,
        )


def _solve(S: np.ndarray, solver: str, tol: float, max_sweeps: int, vectors: bool):
    if solver == "jacobi":
        return jacobi_eigensolve(S, tol=tol, max_sweeps=max_sweeps, vectors=vectors)
    if solver == "lapack":
        if vectors:
            return np.linalg.eigh(S)
        return np.linalg.eigvalsh(S), None
    raise ParameterError(f"unknown solver {solver!r}; expected one of {SOLVERS}")


def spectrum(
    g: Graph,
    solver: str = "jacobi",
    tol: float = DEFAULT_EIGEN_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> Spectrum:
    """
    Full spectrum of the normalized Laplacian of ``g``.

    Args:
        g: A graph without isolated vertices.
        solver: ``"jacobi"`` (default) or ``"lapack"`` (numpy.linalg.eigh, used as an oracle).
        tol: Off-diagonal tolerance for the Jacobi solver.
        max_sweeps: Jacobi sweep cap.

    Returns:
        Eigenvalues, degree-normalized eigenfunctions of L and their residuals.
    """
    d = degree_vector(g)
    eigenvalues, U = _solve(symmetric_form(g), solver, tol, max_sweeps, vectors=True)
    F = U / np.sqrt(d)[:, None]
    LF = F - (adjacency_matrix(g) @ F) / d[:, None]
    residuals = np.max(np.abs(LF - F * eigenvalues[None, :]), axis=0)
    return Spectrum(eigenvalues=eigenvalues, eigenvectors=F, residuals=residuals)


def batch_eigenvalues(
    graphs: Sequence[Graph],
    solver: str = "jacobi",
    tol: float = DEFAULT_EIGEN_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> np.ndarray:
    """Ascending eigenvalues for a batch of equal-order graphs, shape ``(B, n)``."""
    eigenvalues, _ = _solve(symmetric_forms(graphs), solver, tol, max_sweeps, vectors=False)
    return eigenvalues


def largest_eigenvalue(g: Graph, solver: str = "jacobi") -> float:
    return float(batch_eigenvalues([g], solver=solver)[0, -1])


def verify_eigenpair(g: Graph, eigenvalue: float, f, tol: float) -> bool:
    """True iff max_x |Lf(x) - eigenvalue * f(x)| <= tol."""
    values = as_vertex_function(g, f)
    if not np.any(values):
        raise ZeroFunctionError("eigenpair check of the zero function")
    return bool(np.max(np.abs(apply_laplacian(g, values) - eigenvalue * values)) <= tol)
