"""
Rayleigh-quotient certificates for the non-complete and minimum-degree bounds.

A certificate is an explicit vertex function f with <Lf, f> >= bound * <f, f>. The
witness for a non-adjacent pair (v, w) with A = |N(v) & N(w)| >= 1 common neighbours is

    f = -1 on N(v) & N(w),   f(v) = c * A / d(v),   f(w) = c * A / d(w),   0 elsewhere,

with c = (n-1)/2 for the non-complete bound and c = eta = sqrt(d_min (n-1-d_min)) for the
minimum-degree bound. The audit checks the pointwise inequality f Lf >= bound f^2 on the
support, and walks the chain of estimates at every common neighbour.

Examples:
    Certify the 5-cycle::

        cert, audit = certify_thm1(cycle(5))
        cert.rayleigh        # 5/3
        audit.worst_slack    # 0.0 at the pair, 0.5 at the common neighbour
"""

from enum import Enum
from fractions import Fraction
import math
from typing import Dict, List, Optional, Tuple

from loguru import logger
import numpy as np
from pydantic import BaseModel, ConfigDict

from lapgap.bounds import thm1_lower_bound, thm3_eta, thm3_lower_bound, thm3_lower_bound_exact
from lapgap.config import ACCEPT_TOL, TIGHT_TOL
from lapgap.errors import (
    AdjacentPairError,
    DisconnectedError,
    DMinTooLargeError,
    EmptyCommonNeighborhoodError,
    GraphCompleteError,
    ParameterError,
)
from lapgap.graph import (
    Graph,
    connected_components,
    induced_subgraph,
    is_complete,
    is_connected,
    neighborhood_at_distance,
)
from lapgap.graph_io import parse_graph6, to_graph6
from lapgap.records import CertificateRecord, ExactFraction
from lapgap.spectral import VertexFunction, apply_laplacian, degree_vector, rayleigh_quotient
from lapgap.utils.log_timing import log_func

COMPONENT_NOTE = "component witness; psi is decreasing in n"


class CertificateMethod(str, Enum):
    THM1 = "Thm1"
    THM3 = "Thm3"
    CLASSICAL = "Classical"
    SMALLEST_COMPONENT = "SmallestComponent"


class WitnessMode(str, Enum):
    THM1 = "thm1"
    THM3 = "thm3"


class Certificate(BaseModel):
    """A witness function with the bound it certifies.

    Attributes:
    - method: Which theorem the certificate instantiates.
    - argument: The construction that produced the witness (thm1, thm3 or classical).
    - bound / exact_bound: The certified lower bound for the whole graph.
    - component_bound: The bound the witness attains on its own component.
    - witness: f on all n vertices, zero off the component.
    - pair: The non-adjacent pair (v, w); absent for the classical witness.
    - A, D, eta: Pair statistics from the construction.
    - component: Vertices the witness lives on.
    - rayleigh: <Lf, f> / <f, f> on the full graph.
    - component_construction: The minimum-degree bound on a disconnected graph, proven
      on one component.
    """

    model_config = ConfigDict(frozen=True)

    method: CertificateMethod
    argument: str
    bound: float
    exact_bound: Optional[ExactFraction] = None
    component_bound: float
    witness: Tuple[float, ...]
    pair: Optional[Tuple[int, int]] = None
    A: Optional[int] = None
    D: Optional[float] = None
    eta: Optional[float] = None
    component: Tuple[int, ...]
    rayleigh: float
    component_construction: bool = False
    note: Optional[str] = None

    @property
    def n(self) -> int:
        return len(self.witness)

    def support(self) -> Tuple[int, ...]:
        return tuple(x for x, value in enumerate(self.witness) if value != 0.0)


class AuditEntry(BaseModel):
    """Pointwise record at one support vertex; slack = sign(f(x)) * (Lf(x) - bound * f(x))."""

    vertex: int
    role: str  # "pair", "common" or "classical"
    value: float
    laplacian: float
    slack: float


class InequalityChain(BaseModel):
    """The successive lower estimates of -Lf(x) - 1 at a common neighbour x, ending at bound - 1."""

    vertex: int
    links: Tuple[float, ...]

    @property
    def holds(self) -> bool:
        return all(a >= b - ACCEPT_TOL for a, b in zip(self.links, self.links[1:]))

    @property
    def is_tight(self) -> bool:
        return all(abs(a - b) <= TIGHT_TOL for a, b in zip(self.links, self.links[1:]))


class PointwiseAudit(BaseModel):
    entries: Tuple[AuditEntry, ...]
    chains: Tuple[InequalityChain, ...] = ()
    # f(v) + f(w) >= A; None for the classical witness.
    pair_sum_condition: Optional[bool] = None

    @property
    def slacks(self) -> Dict[int, float]:
        return {entry.vertex: entry.slack for entry in self.entries}

    @property
    def worst_slack(self) -> float:
        return min(entry.slack for entry in self.entries)

    @property
    def holds(self) -> bool:
        return (
            self.worst_slack >= -ACCEPT_TOL
            and all(chain.holds for chain in self.chains)
            and self.pair_sum_condition is not False
        )

    @property
    def is_tight(self) -> bool:
        return all(abs(entry.slack) <= TIGHT_TOL for entry in self.entries) and all(
            chain.is_tight for chain in self.chains
        )


# ================================================================
# Witness construction
# ================================================================


def select_witness_pair(g: Graph, mode: WitnessMode = WitnessMode.THM1) -> Tuple[int, int]:
    """
    Deterministic non-adjacent pair with a common neighbour.

    Thm1 picks the lowest vertex with d(v) <= n-2, Thm3 the lowest vertex of minimum
    degree; w is the lowest vertex at distance exactly 2 from v.
    """
    mode = WitnessMode(mode)
    if is_complete(g):
        raise GraphCompleteError(f"K_{g.n} has no non-adjacent pair")
    if not is_connected(g):
        raise DisconnectedError("witness pair selection needs a connected graph")
    degrees = g.degrees()
    if mode is WitnessMode.THM1:
        v = next(x for x, d in enumerate(degrees) if d <= g.n - 2)
    else:
        d_min = min(degrees)
        if 2 * d_min > g.n - 1:
            raise DMinTooLargeError(g.n, d_min)
        v = degrees.index(d_min)
    w = min(neighborhood_at_distance(g, v, 2))
    return v, w


def _pair_witness(g: Graph, v: int, w: int, scale: float) -> VertexFunction:
    if v == w or g.has_edge(v, w):
        raise AdjacentPairError(v, w)
    common = g.common_neighbors(v, w)
    if not common:
        raise EmptyCommonNeighborhoodError(v, w)
    A = len(common)
    f = np.zeros(g.n)
    f[common] = -1.0
    f[v] = scale * A / g.degree(v)
    f[w] = scale * A / g.degree(w)
    return f


def build_thm1_witness(g: Graph, v: int, w: int) -> VertexFunction:
    """f = -1 on N(v) & N(w) and (n-1)/2 * A/d at v and w; Lf = (n+1)/(n-1) f at v and w."""
    return _pair_witness(g, v, w, (g.n - 1) / 2)


def build_thm3_witness(g: Graph, v: int, w: int) -> Tuple[VertexFunction, float]:
    """The same shape with scale eta; ``v`` must be a vertex of minimum degree."""
    d_min = g.min_degree
    if g.degree(v) != d_min:
        raise ParameterError(f"vertex {v} has degree {g.degree(v)}, not the minimum degree {d_min}")
    eta = thm3_eta(g.n, d_min)
    return _pair_witness(g, v, w, eta), eta


def build_classical_witness(g: Graph, a: int, b: int) -> VertexFunction:
    """1_a - 1_b; on a complete component this is an eigenfunction for k/(k-1)."""
    if a == b:
        raise ParameterError("classical witness needs two distinct vertices")
    f = np.zeros(g.n)
    f[a] = 1.0
    f[b] = -1.0
    return f


def _extend(n: int, mapping: Tuple[int, ...], f: VertexFunction) -> VertexFunction:
    full = np.zeros(n)
    full[list(mapping)] = f
    return full


def _pair_stats(g: Graph, v: int, w: int) -> Tuple[int, float]:
    return len(g.common_neighbors(v, w)), (g.degree(v) + g.degree(w)) / 2


# ================================================================
# Certificates
# ================================================================


def _component_thm1(g: Graph, component: Tuple[int, ...]) -> dict:
    """Thm1 witness on ``component`` of ``g``, in original labels."""
    sub, mapping = induced_subgraph(g, component)
    v, w = select_witness_pair(sub, WitnessMode.THM1)
    A, D = _pair_stats(sub, v, w)
    return {
        "argument": "thm1",
        "component_bound": float(thm1_lower_bound(sub.n)),
        "witness": _extend(g.n, mapping, build_thm1_witness(sub, v, w)),
        "pair": (mapping[v], mapping[w]),
        "A": A,
        "D": D,
    }


def _component_classical(g: Graph, component: Tuple[int, ...]) -> dict:
    k = len(component)
    return {
        "argument": "classical",
        "component_bound": k / (k - 1),
        "witness": build_classical_witness(g, component[0], component[1]),
    }


def _finish(g: Graph, **fields) -> Certificate:
    witness = fields.pop("witness")
    return Certificate(
        witness=tuple(float(x) for x in witness),
        rayleigh=rayleigh_quotient(g, witness),
        **fields,
    )


def certify_thm1(g: Graph) -> Tuple[Certificate, PointwiseAudit]:
    """
    Certify lambda_n >= (n+1)/(n-1) for a non-complete graph.

    Connected graphs get the pair witness directly. A disconnected graph is certified on
    its smallest component: the classical witness when that component is complete,
    otherwise the pair witness on the component.

    Raises:
        GraphCompleteError: ``g`` is complete.
        IsolatedVertexError: Some vertex has degree 0.
    """
    degree_vector(g)
    if is_complete(g):
        raise GraphCompleteError(f"K_{g.n} is the equality case of the classical bound only")
    bound = thm1_lower_bound(g.n)
    common = {"bound": float(bound), "exact_bound": bound}
    if is_connected(g):
        v, w = select_witness_pair(g, WitnessMode.THM1)
        A, D = _pair_stats(g, v, w)
        cert = _finish(
            g,
            method=CertificateMethod.THM1,
            argument="thm1",
            component_bound=float(bound),
            witness=build_thm1_witness(g, v, w),
            pair=(v, w),
            A=A,
            D=D,
            component=tuple(range(g.n)),
            **common,
        )
    else:
        component = connected_components(g).smallest()
        sub, _ = induced_subgraph(g, component)
        if is_complete(sub):
            construction = _component_classical(g, component)
        else:
            construction = _component_thm1(g, component)
        logger.debug(f"Disconnected graph: {construction['argument']} witness on component {component}")
        cert = _finish(
            g,
            method=CertificateMethod.SMALLEST_COMPONENT,
            component=component,
            **construction,
            **common,
        )
    return cert, audit_pointwise(g, cert)


def certify_thm3(g: Graph) -> Tuple[Certificate, PointwiseAudit]:
    """
    Certify lambda_n >= psi(n, d_min) = 1 + 1/sqrt(d_min (n-1-d_min)).

    On a disconnected graph the witness lives on the component C of the chosen
    minimum-degree vertex: the thm3 witness if d_min <= (|C|-1)/2, the classical witness if
    C is complete, the thm1 witness otherwise. Each dominates psi(n, d_min).

    Raises:
        DMinTooLargeError: d_min > (n-1)/2.
        IsolatedVertexError: Some vertex has degree 0.
    """
    degree_vector(g)
    d_min = g.min_degree
    if 2 * d_min > g.n - 1:
        raise DMinTooLargeError(g.n, d_min)
    common = {"bound": thm3_lower_bound(g.n, d_min), "exact_bound": thm3_lower_bound_exact(g.n, d_min)}
    if is_connected(g):
        v, w = select_witness_pair(g, WitnessMode.THM3)
        witness, eta = build_thm3_witness(g, v, w)
        A, D = _pair_stats(g, v, w)
        cert = _finish(
            g,
            method=CertificateMethod.THM3,
            argument="thm3",
            component_bound=common["bound"],
            witness=witness,
            pair=(v, w),
            A=A,
            D=D,
            eta=eta,
            component=tuple(range(g.n)),
            **common,
        )
        return cert, audit_pointwise(g, cert)

    v = g.degrees().index(d_min)
    component = connected_components(g).component_of(v)
    sub, mapping = induced_subgraph(g, component)
    if 2 * d_min <= sub.n - 1:
        sv, sw = select_witness_pair(sub, WitnessMode.THM3)
        witness, eta = build_thm3_witness(sub, sv, sw)
        A, D = _pair_stats(sub, sv, sw)
        construction = {
            "argument": "thm3",
            "component_bound": thm3_lower_bound(sub.n, d_min),
            "witness": _extend(g.n, mapping, witness),
            "pair": (mapping[sv], mapping[sw]),
            "A": A,
            "D": D,
            "eta": eta,
        }
    elif is_complete(sub):
        construction = _component_classical(g, component)
    else:
        construction = _component_thm1(g, component)
    logger.debug(f"Disconnected graph: {construction['argument']} witness on component {component}")
    cert = _finish(
        g,
        method=CertificateMethod.THM3,
        component=component,
        component_construction=True,
        note=COMPONENT_NOTE,
        **construction,
        **common,
    )
    return cert, audit_pointwise(g, cert)


# ================================================================
# Audit
# ================================================================


def _thm1_chain(
    n: int, dv: int, dw: int, dx: int, A: int, fv: float, fw: float, minus_lf: float
) -> List[float]:
    floor = max(1, dv + dw + 2 - n)
    D = (dv + dw) / 2
    bracket = 1 / (2 * dv) + 1 / (2 * dw) - 1 / (n - 1)
    return [
        minus_lf - 1,
        (1 - A + fv + fw) / dx,
        1 / (n - 1) + A * bracket,
        1 / (n - 1) + floor * bracket,
        1 / (n - 1) + floor * (1 / D - 1 / (n - 1)),
        2 / (n - 1),
    ]


def _thm3_chain(
    n: int, dv: int, dw: int, dx: int, A: int, eta: float, fv: float, fw: float, minus_lf: float
) -> List[float]:
    floor = max(1, dv + dw + 2 - n)
    bracket = 1 / dv + 1 / dw - 1 / eta
    return [
        minus_lf - 1,
        (1 - A + fv + fw) / dx,
        1 / (n - 1) + eta * A / (n - 1) * bracket,
        1 / (n - 1) + eta / (n - 1) * floor * bracket,
        1 / eta,
    ]


def audit_pointwise(g: Graph, cert: Certificate) -> PointwiseAudit:
    """
    Check f Lf >= bound f^2 at every support vertex, against the certificate's own bound.

    For pair witnesses the chain of estimates is evaluated at every common neighbour with
    the statistics of the component the witness lives on.
    """
    f = np.asarray(cert.witness)
    lf = apply_laplacian(g, f)
    common = set(g.common_neighbors(*cert.pair)) if cert.pair is not None else set()
    entries = []
    for x in cert.support():
        if cert.pair is None:
            role = "classical"
        else:
            role = "pair" if x in cert.pair else "common"
        entries.append(
            AuditEntry(
                vertex=x,
                role=role,
                value=float(f[x]),
                laplacian=float(lf[x]),
                slack=float(np.sign(f[x]) * (lf[x] - cert.bound * f[x])),
            )
        )
    if cert.pair is None:
        return PointwiseAudit(entries=tuple(entries))

    v, w = cert.pair
    n_local = len(cert.component)
    dv, dw = g.degree(v), g.degree(w)
    chains = []
    for x in sorted(common):
        args = (n_local, dv, dw, g.degree(x), cert.A, float(f[v]), float(f[w]), float(-lf[x]))
        if cert.argument == "thm3":
            links = _thm3_chain(*args[:5], cert.eta, *args[5:])
        else:
            links = _thm1_chain(*args)
        chains.append(InequalityChain(vertex=x, links=tuple(links)))
    return PointwiseAudit(
        entries=tuple(entries),
        chains=tuple(chains),
        pair_sum_condition=bool(f[v] + f[w] >= cert.A - TIGHT_TOL),
    )


# ================================================================
# Minimum-degree lemma
# ================================================================


def _lemma_slacks(n: int, d_v, d_w) -> np.ndarray:
    d_v = np.asarray(d_v, dtype=np.float64)
    d_w = np.asarray(d_w, dtype=np.float64)
    eta = np.sqrt(d_v * (n - 1 - d_v))
    floor = np.maximum(1.0, d_v + d_w + 2 - n)
    lhs = eta / (n - 1) * floor * (1 / d_v + 1 / d_w - 1 / eta)
    return lhs - (1 / eta - 1 / (n - 1))


def _check_lemma_domain(n: int, d_v: int, d_w: int) -> None:
    if n < 3 or not 1 <= d_v <= (n - 1) / 2 or not d_v <= d_w <= n - 2:
        raise ParameterError(
            f"lemma needs n >= 3, 1 <= d_v <= (n-1)/2 and d_v <= d_w <= n-2, got ({n}, {d_v}, {d_w})"
        )


def lemma_slack(n: int, d_v: int, d_w: int) -> float:
    """Left side minus right side of the lemma behind the minimum-degree bound."""
    _check_lemma_domain(n, d_v, d_w)
    return float(_lemma_slacks(n, d_v, d_w))


def lemma_check(n: int, d_v: int, d_w: int) -> bool:
    return lemma_slack(n, d_v, d_w) >= -TIGHT_TOL


class LemmaGridReport(BaseModel):
    """Brute-force check of the lemma over 3 <= n <= n_max.

    ``boundary_gap`` is the largest |slack| on the boundary d_w = n-1-d_v, where the
    lemma holds with equality.
    """

    n_range: Tuple[int, int]
    points: int
    min_slack: float
    argmin: Tuple[int, int, int]
    boundary_gap: float
    failures: List[Tuple[int, int, int]]

    @property
    def passed(self) -> bool:
        return not self.failures and self.boundary_gap <= TIGHT_TOL


@log_func(message="lemma_grid")
def lemma_grid(n_max: int, n_min: int = 3, max_failures: int = 20) -> LemmaGridReport:
    if not 3 <= n_min <= n_max:
        raise ParameterError(f"lemma grid needs 3 <= n_min <= n_max, got ({n_min}, {n_max})")
    points = 0
    min_slack = math.inf
    argmin = (n_min, 1, 1)
    boundary_gap = 0.0
    failures: List[Tuple[int, int, int]] = []
    for n in range(n_min, n_max + 1):
        d_v, d_w = np.meshgrid(np.arange(1, (n - 1) // 2 + 1), np.arange(1, n - 1), indexing="ij")
        valid = d_w >= d_v
        d_v, d_w = d_v[valid], d_w[valid]
        slacks = _lemma_slacks(n, d_v, d_w)
        points += slacks.size
        k = int(np.argmin(slacks))
        if slacks[k] < min_slack:
            min_slack = float(slacks[k])
            argmin = (n, int(d_v[k]), int(d_w[k]))
        boundary = d_w == n - 1 - d_v
        if boundary.any():
            boundary_gap = max(boundary_gap, float(np.max(np.abs(slacks[boundary]))))
        for i in np.flatnonzero(slacks < -TIGHT_TOL)[: max(0, max_failures - len(failures))]:
            failures.append((n, int(d_v[i]), int(d_w[i])))
    return LemmaGridReport(
        n_range=(n_min, n_max),
        points=points,
        min_slack=min_slack,
        argmin=argmin,
        boundary_gap=boundary_gap,
        failures=failures,
    )


# ================================================================
# Serialized certificates
# ================================================================


def certificate_record(
    g: Graph, cert: Certificate, audit: Optional[PointwiseAudit] = None
) -> CertificateRecord:
    audit = audit if audit is not None else audit_pointwise(g, cert)
    return CertificateRecord(
        graph6=to_graph6(g),
        method=cert.method.value,
        argument=cert.argument,
        pair=cert.pair,
        witness=list(cert.witness),
        bound=cert.bound,
        exact_bound=cert.exact_bound,
        rayleigh=cert.rayleigh,
        slacks=audit.slacks,
        component_construction=cert.component_construction,
        note=cert.note,
    )


def verify_certificate_record(record: CertificateRecord, tol: float = ACCEPT_TOL) -> bool:
    """
    Re-verify a certificate from its record alone.

    Decodes the graph, applies L to the stored witness and checks: the quotient reaches the
    bound, it matches the stored quotient, pair witnesses vanish off {v, w} and their
    common neighbours, and every stored slack is reproduced.
    """
    g = parse_graph6(record.graph6)
    f = np.asarray(record.witness, dtype=np.float64)
    if f.shape != (g.n,) or not np.any(f):
        logger.warning(f"Certificate witness has the wrong shape or is zero for n={g.n}")
        return False
    if record.exact_bound is not None and abs(float(Fraction(record.exact_bound)) - record.bound) > tol:
        logger.warning(f"Exact bound {record.exact_bound} disagrees with bound {record.bound}")
        return False
    rayleigh = rayleigh_quotient(g, f)
    if rayleigh < record.bound - tol or abs(rayleigh - record.rayleigh) > tol:
        logger.warning(f"Rayleigh quotient {rayleigh} fails bound {record.bound} or stored {record.rayleigh}")
        return False
    if record.pair is not None:
        v, w = record.pair
        allowed = {v, w, *g.common_neighbors(v, w)}
        if any(value != 0.0 and x not in allowed for x, value in enumerate(f)):
            logger.warning(f"Witness support leaves {{v, w}} and N(v) & N(w) for pair {record.pair}")
            return False
    lf = apply_laplacian(g, f)
    for x, stored in record.slacks.items():
        slack = float(np.sign(f[x]) * (lf[x] - record.bound * f[x]))
        if abs(slack - stored) > tol or slack < -tol:
            logger.warning(f"Slack at vertex {x} is {slack}, record says {stored}")
            return False
    return True
