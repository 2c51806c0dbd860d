"""
Cyclic Jacobi eigensolver for dense real symmetric matrices.

The solver is vectorised over a leading batch axis: every rotation ``(p, q)`` is applied
to all matrices of a stack at once, each with its own angle. Exhaustive sweeps feed
thousands of small symmetric forms through a single call this way.
"""

from typing import Optional, Tuple

import numpy as np

from lapgap.config import DEFAULT_EIGEN_TOL, DEFAULT_MAX_SWEEPS
from lapgap.errors import NonConvergenceError, ParameterError

# Sweeps that skip rotations with |a_pq| below 0.2 * off / n^2.
THRESHOLD_SWEEPS = 3


def off_diagonal_norm(A: np.ndarray) -> np.ndarray:
    """Frobenius norm of the off-diagonal part, per matrix of a stack."""
    n = A.shape[-1]
    off = A * ~np.eye(n, dtype=bool)
    return np.sqrt(np.sum(off * off, axis=(-2, -1)))


def jacobi_eigensolve(
    S: np.ndarray,
    tol: float = DEFAULT_EIGEN_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    vectors: bool = True,
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    Diagonalise a symmetric matrix (or a stack of them) by cyclic Jacobi rotations.

    Args:
        S: Array of shape ``(n, n)`` or ``(..., n, n)``; each matrix must be symmetric.
        tol: Stop once the off-diagonal Frobenius norm of every matrix is below this.
        max_sweeps: Sweep cap; hitting it raises :class:`NonConvergenceError`.
        vectors: Accumulate the rotations into eigenvectors.

    Returns:
        Ascending eigenvalues of shape ``(..., n)`` and, if requested, orthonormal
        eigenvectors of shape ``(..., n, n)`` whose column ``j`` belongs to eigenvalue ``j``.
    """
    A = np.array(S, dtype=np.float64, copy=True)
    if A.ndim < 2 or A.shape[-1] != A.shape[-2]:
        raise ParameterError(f"expected square matrices, got shape {A.shape}")
    batch_shape = A.shape[:-2]
    n = A.shape[-1]
    A = A.reshape(-1, n, n)
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    if not np.allclose(A, A.transpose(0, 2, 1), rtol=0.0, atol=1e-12 * scale):
        raise ParameterError("matrix is not symmetric")
    A = 0.5 * (A + A.transpose(0, 2, 1))
    B = A.shape[0]
    V = np.broadcast_to(np.eye(n), (B, n, n)).copy() if vectors else None
    off_mask = ~np.eye(n, dtype=bool)

    sweeps = 0
    off = off_diagonal_norm(A)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        while np.any(off >= tol):
            if sweeps >= max_sweeps:
                raise NonConvergenceError(sweeps, float(off.max()))
            if sweeps < THRESHOLD_SWEEPS:
                threshold = 0.2 * np.sum(np.abs(A[:, off_mask]), axis=1) / (n * n)
            else:
                threshold = np.zeros(B)
            for p in range(n - 1):
                for q in range(p + 1, n):
                    _rotate(A, V, p, q, threshold)
            sweeps += 1
            off = off_diagonal_norm(A)

    eigenvalues = np.diagonal(A, axis1=1, axis2=2).copy()
    order = np.argsort(eigenvalues, axis=1, kind="stable")
    eigenvalues = np.take_along_axis(eigenvalues, order, axis=1).reshape(*batch_shape, n)
    if V is None:
        return eigenvalues, None
    V = np.take_along_axis(V, order[:, None, :], axis=2).reshape(*batch_shape, n, n)
    return eigenvalues, V


def _rotate(A: np.ndarray, V: Optional[np.ndarray], p: int, q: int, threshold: np.ndarray) -> None:
    """Annihilate ``A[:, p, q]`` in place with A <- J^T A J and V <- V J."""
    apq = A[:, p, q]
    rotate = (np.abs(apq) > threshold) & (apq != 0.0)
    if not rotate.any():
        return
    safe = np.where(rotate, apq, 1.0)
    theta = (A[:, q, q] - A[:, p, p]) / (2.0 * safe)
    # Smaller root of t^2 + 2 theta t - 1 = 0; theta = 0 gives a 45 degree rotation.
    t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(rotate, t, 0.0)
    c = (1.0 / np.sqrt(t * t + 1.0))[:, None]
    s = t[:, None] * c

    col_p = A[:, :, p].copy()
    col_q = A[:, :, q].copy()
    A[:, :, p] = c * col_p - s * col_q
    A[:, :, q] = s * col_p + c * col_q
    row_p = A[:, p, :].copy()
    row_q = A[:, q, :].copy()
    A[:, p, :] = c * row_p - s * row_q
    A[:, q, :] = s * row_p + c * row_q
    A[rotate, p, q] = 0.0
    A[rotate, q, p] = 0.0

    if V is not None:
        v_p = V[:, :, p].copy()
        v_q = V[:, :, q].copy()
        V[:, :, p] = c * v_p - s * v_q
        V[:, :, q] = s * v_p + c * v_q
