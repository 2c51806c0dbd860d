"""
Exceptions raised by lapgap.

Every error derives from :class:`LapgapError` so callers (and the CLI) can catch the
whole family at once. Input-validation errors also derive from ``ValueError``.
"""

from typing import Optional


class LapgapError(Exception):
    """Base class for all lapgap errors."""


class GraphError(LapgapError, ValueError):
    """Invalid graph construction: loops, out-of-range vertices, n > 64, bad family parameters."""


class Graph6Error(GraphError):
    """Malformed graph6 header or truncated bit payload."""


class ParameterError(LapgapError, ValueError):
    """A numeric parameter is outside the domain of the formula or operation."""


class IsolatedVertexError(LapgapError):
    """The normalized Laplacian is undefined because a vertex has degree 0."""

    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} is isolated; the normalized Laplacian is undefined")


class ZeroFunctionError(LapgapError, ValueError):
    """A Rayleigh quotient or eigenpair check was asked for the zero function."""


class NonConvergenceError(LapgapError, RuntimeError):
    """The Jacobi eigensolver hit its sweep cap."""

    def __init__(self, sweeps: int, off_norm: float):
        self.sweeps = sweeps
        self.off_norm = off_norm
        super().__init__(f"Jacobi did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")


class GraphCompleteError(LapgapError):
    """The operation needs a non-complete graph."""


class DisconnectedError(LapgapError):
    """The operation needs a connected graph."""


class DMinTooLargeError(LapgapError):
    """The minimum degree exceeds (n-1)/2, so the minimum-degree bound does not apply."""

    def __init__(self, n: int, d_min: int):
        self.n = n
        self.d_min = d_min
        super().__init__(f"d_min={d_min} exceeds (n-1)/2 for n={n}")


class AdjacentPairError(LapgapError):
    """A witness pair must be non-adjacent."""

    def __init__(self, v: int, w: int):
        super().__init__(f"vertices {v} and {w} are adjacent")


class EmptyCommonNeighborhoodError(LapgapError):
    """A witness pair must share at least one neighbor."""

    def __init__(self, v: int, w: int):
        super().__init__(f"vertices {v} and {w} have no common neighbor")


class VerdictMismatchError(LapgapError):
    """The supplied rigidity verdict does not describe the graph."""

    def __init__(self, message: Optional[str] = None):
        super().__init__(message or "verdict does not describe the graph")
