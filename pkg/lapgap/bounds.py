"""
Closed-form lower bounds on the largest normalized Laplacian eigenvalue.

- classical:     n/(n-1), attained only by K_n.
- non-complete:  (n+1)/(n-1) for every non-complete graph.
- minimum degree: 1 + 1/sqrt(d_min(n-1-d_min)) when d_min <= (n-1)/2.
- Li-Guo-Shiu:   2m/(2m - Delta).

Rational bounds are exact :class:`~fractions.Fraction` values.
"""

from fractions import Fraction
import math
from typing import Optional

from pydantic import BaseModel

from lapgap.config import ACCEPT_TOL
from lapgap.errors import DMinTooLargeError, ParameterError
from lapgap.graph import Graph, is_complete
from lapgap.records import ExactFraction
from lapgap.spectral import degree_vector, largest_eigenvalue


def classical_lower_bound(n: int) -> Fraction:
    if n < 2:
        raise ParameterError(f"classical bound needs n >= 2, got {n}")
    return Fraction(n, n - 1)


def thm1_lower_bound(n: int) -> Fraction:
    """(n+1)/(n-1), the bound for every non-complete graph on n vertices."""
    if n < 3:
        raise ParameterError(f"non-complete bound needs n >= 3, got {n}")
    return Fraction(n + 1, n - 1)


def _check_min_degree_domain(n: int, d_min: int) -> None:
    if n < 3 or d_min < 1:
        raise ParameterError(f"minimum-degree bound needs n >= 3 and d_min >= 1, got n={n}, d_min={d_min}")
    if 2 * d_min > n - 1:
        raise DMinTooLargeError(n, d_min)


def thm3_eta(n: int, d_min: int) -> float:
    """eta = 1/(psi - 1) = sqrt(d_min (n - 1 - d_min))."""
    _check_min_degree_domain(n, d_min)
    return math.sqrt(d_min * (n - 1 - d_min))


def thm3_lower_bound(n: int, d_min: int) -> float:
    """psi(n, d_min) = 1 + 1/sqrt(d_min (n-1-d_min)), defined for 1 <= d_min <= (n-1)/2."""
    return 1.0 + 1.0 / thm3_eta(n, d_min)


def thm3_lower_bound_exact(n: int, d_min: int) -> Optional[Fraction]:
    """psi(n, d_min) as a rational when d_min (n-1-d_min) is a perfect square, else None."""
    _check_min_degree_domain(n, d_min)
    product = d_min * (n - 1 - d_min)
    root = math.isqrt(product)
    if root * root != product:
        return None
    return 1 + Fraction(1, root)


def li_guo_shiu_bound(m: int, delta: int) -> Fraction:
    if m < 1 or not 1 <= delta <= 2 * m - 1:
        raise ParameterError(
            f"Li-Guo-Shiu bound needs m >= 1 and 1 <= delta <= 2m-1, got m={m}, delta={delta}"
        )
    return Fraction(2 * m, 2 * m - delta)


class BoundReport(BaseModel):
    """Every applicable lower bound for one graph.

    Attributes:
    - n, m, d_min, max_degree: Graph statistics.
    - classical: n/(n-1).
    - thm1: (n+1)/(n-1), absent for complete graphs.
    - thm3: The minimum-degree bound, absent when d_min > (n-1)/2.
    - thm3_exact: The same value as a rational, when it is rational.
    - li_guo_shiu: 2m/(2m - Delta).
    - best / best_source: The largest present bound and its name.
    - lambda_n: The true largest eigenvalue, when requested.
    """

    n: int
    m: int
    d_min: int
    max_degree: int
    classical: ExactFraction
    thm1: Optional[ExactFraction] = None
    thm3: Optional[float] = None
    thm3_exact: Optional[ExactFraction] = None
    thm3_applicable: bool
    li_guo_shiu: ExactFraction
    best: float
    best_source: str
    lambda_n: Optional[float] = None

    def present_bounds(self) -> dict:
        bounds = {"classical": float(self.classical), "li_guo_shiu": float(self.li_guo_shiu)}
        if self.thm1 is not None:
            bounds["thm1"] = float(self.thm1)
        if self.thm3 is not None:
            bounds["thm3"] = self.thm3
        return bounds

    def is_sound(self, tol: float = ACCEPT_TOL) -> bool:
        """Every present bound is at most lambda_n (vacuously true without lambda_n)."""
        if self.lambda_n is None:
            return True
        return all(value <= self.lambda_n + tol for value in self.present_bounds().values())


def bound_report(g: Graph, compute_spectrum: bool = False, solver: str = "jacobi") -> BoundReport:
    """
    Evaluate every applicable bound on ``g``.

    Args:
        g: A graph without isolated vertices.
        compute_spectrum: Also compute the true largest eigenvalue.
        solver: Eigensolver used when ``compute_spectrum`` is set.
    """
    degree_vector(g)
    n, m = g.n, g.edge_count
    d_min, max_degree = g.min_degree, g.max_degree
    thm3_applicable = n >= 3 and 2 * d_min <= n - 1
    fields = {
        "n": n,
        "m": m,
        "d_min": d_min,
        "max_degree": max_degree,
        "classical": classical_lower_bound(n),
        "thm1": None if is_complete(g) else thm1_lower_bound(n),
        "thm3": thm3_lower_bound(n, d_min) if thm3_applicable else None,
        "thm3_exact": thm3_lower_bound_exact(n, d_min) if thm3_applicable else None,
        "thm3_applicable": thm3_applicable,
        "li_guo_shiu": li_guo_shiu_bound(m, max_degree),
    }
    candidates = {"classical": float(fields["classical"]), "li_guo_shiu": float(fields["li_guo_shiu"])}
    if fields["thm1"] is not None:
        candidates["thm1"] = float(fields["thm1"])
    if fields["thm3"] is not None:
        candidates["thm3"] = fields["thm3"]
    best_source = max(candidates, key=lambda name: candidates[name])
    return BoundReport(
        **fields,
        best=candidates[best_source],
        best_source=best_source,
        lambda_n=largest_eigenvalue(g, solver=solver) if compute_spectrum else None,
    )
