"""
Equality cases of lambda_n >= (n+1)/(n-1).

A graph attains the bound iff its complement, after removing isolated vertices, is a single
edge or the complete bipartite graph K_{(n-1)/2,(n-1)/2}. The classifier below is exact
combinatorics; the spectral side is checked against it by the sweeps.
"""

from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from loguru import logger
import numpy as np
from pydantic import BaseModel, ConfigDict

from lapgap.config import ACCEPT_TOL, EIGENPAIR_TOL
from lapgap.errors import (
    AdjacentPairError,
    EmptyCommonNeighborhoodError,
    ParameterError,
    VerdictMismatchError,
)
from lapgap.generators import glued_complete
from lapgap.graph import Graph, add_edge, complement, is_complete_bipartite, remove_isolated_vertices
from lapgap.graph_io import to_graph6
from lapgap.records import ExactFraction
from lapgap.spectral import VertexFunction, degree_inner_product, degree_vector, indicator, largest_eigenvalue


def printed_single_edge_value(n: int) -> Fraction:
    """The single-edge complement value as usually quoted; the trace identity gives n/(n-1)."""
    return Fraction(n, n + 1)


class EqualityKind(str, Enum):
    SINGLE_EDGE_COMPLEMENT = "SingleEdgeComplement"
    BALANCED_BIPARTITE_COMPLEMENT = "BalancedBipartiteComplement"
    NOT_EQUALITY = "NotEquality"


class RigidityVerdict(BaseModel):
    """Outcome of :func:`classify_equality`.

    Attributes:
    - kind: Which equality family, if any.
    - pair: The missing edge (v, w) of a single-edge complement.
    - parts: (P_v, P_w) of a balanced bipartite complement, P_v holding the lower vertex.
    - center: The vertex adjacent to all others in the balanced case.
    - removed_isolated: Vertices isolated in the complement.
    """

    model_config = ConfigDict(frozen=True)

    graph6: Optional[str] = None
    kind: EqualityKind
    pair: Optional[Tuple[int, int]] = None
    parts: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None
    center: Optional[int] = None
    removed_isolated: Tuple[int, ...] = ()

    @property
    def is_equality(self) -> bool:
        return self.kind is not EqualityKind.NOT_EQUALITY


def classify_equality(g: Graph, encode: bool = True) -> RigidityVerdict:
    """
    Decide combinatorially whether ``g`` attains (n+1)/(n-1).

    Args:
        g: A graph without isolated vertices.
        encode: Attach the graph6 string; sweeps skip it.

    Raises:
        IsolatedVertexError: ``g`` itself has an isolated vertex.
    """
    degree_vector(g)
    h = complement(g)
    graph6 = to_graph6(g) if encode else None
    if h.edge_count == 0:
        return RigidityVerdict(
            graph6=graph6, kind=EqualityKind.NOT_EQUALITY, removed_isolated=tuple(range(g.n))
        )
    core, mapping = remove_isolated_vertices(h)
    removed = tuple(sorted(set(range(g.n)) - set(mapping)))
    if core.edge_count == 1:
        return RigidityVerdict(
            graph6=graph6,
            kind=EqualityKind.SINGLE_EDGE_COMPLEMENT,
            pair=(mapping[0], mapping[1]),
            removed_isolated=removed,
        )
    parts = is_complete_bipartite(core)
    if parts is not None and len(removed) == 1 and len(parts[0]) == len(parts[1]) == (g.n - 1) // 2:
        p_v, p_w = (tuple(mapping[i] for i in part) for part in parts)
        return RigidityVerdict(
            graph6=graph6,
            kind=EqualityKind.BALANCED_BIPARTITE_COMPLEMENT,
            parts=(p_v, p_w),
            center=removed[0],
            removed_isolated=removed,
        )
    return RigidityVerdict(graph6=graph6, kind=EqualityKind.NOT_EQUALITY, removed_isolated=removed)


def _require_verdict(g: Graph, verdict: RigidityVerdict, *kinds: EqualityKind) -> None:
    if verdict.kind not in kinds:
        expected = " or ".join(k.value for k in kinds)
        raise VerdictMismatchError(f"expected a {expected} verdict, got {verdict.kind.value}")
    actual = classify_equality(g, encode=False)
    if (actual.kind, actual.pair, actual.parts, actual.center) != (
        verdict.kind,
        verdict.pair,
        verdict.parts,
        verdict.center,
    ):
        raise VerdictMismatchError(f"verdict {verdict.kind.value} does not describe {to_graph6(g)}")


def orthogonal_complement_eigenvalue(verdict: RigidityVerdict, n: int) -> Optional[Fraction]:
    """
    Eigenvalue on the complement of the closed-form eigenfunctions, from sum(lambda_i) = n.

    Single edge: 0 + 1 + (n+1)/(n-1) + (n-3) x = n gives x = n/(n-1).
    Balanced: 0 + 2/(n-1) + (n-2) x = n gives x = (n+1)/(n-1).
    Returns None when the complement is trivial (n = 3, single edge).
    """
    if verdict.kind is EqualityKind.SINGLE_EDGE_COMPLEMENT:
        known, dimension = [Fraction(0), Fraction(1), Fraction(n + 1, n - 1)], n - 3
    elif verdict.kind is EqualityKind.BALANCED_BIPARTITE_COMPLEMENT:
        known, dimension = [Fraction(0), Fraction(2, n - 1)], n - 2
    else:
        raise VerdictMismatchError("NotEquality graphs have no closed-form eigenbasis")
    if dimension == 0:
        return None
    return (n - sum(known)) / dimension


class ComplementEigenvalue(BaseModel):
    value: Optional[ExactFraction] = None
    dimension: int
    printed_value: Optional[ExactFraction] = None

    @property
    def discrepancy(self) -> bool:
        return self.printed_value is not None and self.printed_value != self.value


def complement_eigenvalue_report(verdict: RigidityVerdict, n: int) -> ComplementEigenvalue:
    value = orthogonal_complement_eigenvalue(verdict, n)
    if verdict.kind is EqualityKind.SINGLE_EDGE_COMPLEMENT:
        return ComplementEigenvalue(value=value, dimension=n - 3, printed_value=printed_single_edge_value(n))
    return ComplementEigenvalue(value=value, dimension=n - 2)


class EqualityEigenpair(BaseModel):
    eigenvalue: ExactFraction
    function: Tuple[float, ...]
    source: str  # "constant", "closed_form" or "completion"


def _complete_basis(g: Graph, listed: Sequence[VertexFunction]) -> List[VertexFunction]:
    """Gram-Schmidt of the coordinate indicators against ``listed`` in <., .>."""
    basis = [f / np.sqrt(degree_inner_product(g, f, f)) for f in listed]
    added: List[VertexFunction] = []
    for x in range(g.n):
        if len(basis) == g.n:
            break
        h = indicator(g.n, [x])
        for _ in range(2):
            for b in basis:
                h = h - degree_inner_product(g, h, b) * b
        norm = np.sqrt(degree_inner_product(g, h, h))
        if norm < 1e-9:
            continue
        h = h / norm
        basis.append(h)
        added.append(h)
    return added


def equality_eigenbasis(g: Graph, verdict: RigidityVerdict) -> List[EqualityEigenpair]:
    """
    A full eigenbasis of L for an equality graph.

    The constant function and the closed-form eigenfunctions come first; the rest is the
    degree-orthogonal completion, all sharing :func:`orthogonal_complement_eigenvalue`.

    Raises:
        VerdictMismatchError: ``verdict`` is NotEquality or does not describe ``g``.
    """
    _require_verdict(
        g, verdict, EqualityKind.SINGLE_EDGE_COMPLEMENT, EqualityKind.BALANCED_BIPARTITE_COMPLEMENT
    )
    n = g.n
    constant = np.ones(n)
    if verdict.kind is EqualityKind.SINGLE_EDGE_COMPLEMENT:
        v, w = verdict.pair
        closed_form = [
            (Fraction(1), indicator(n, [v]) - indicator(n, [w])),
            (Fraction(n + 1, n - 1), -2.0 + (n + 1) * indicator(n, [v, w])),
        ]
    else:
        p_v, p_w = verdict.parts
        closed_form = [(Fraction(2, n - 1), indicator(n, p_v) - indicator(n, p_w))]

    pairs = [EqualityEigenpair(eigenvalue=Fraction(0), function=tuple(constant), source="constant")]
    pairs += [
        EqualityEigenpair(eigenvalue=value, function=tuple(float(x) for x in f), source="closed_form")
        for value, f in closed_form
    ]
    completion = _complete_basis(g, [constant] + [f for _, f in closed_form])
    value = orthogonal_complement_eigenvalue(verdict, n)
    pairs += [
        EqualityEigenpair(eigenvalue=value, function=tuple(float(x) for x in f), source="completion")
        for f in completion
    ]
    return pairs


def remark_eigenfunctions(g: Graph) -> List[VertexFunction]:
    """
    Eigenfunctions for (n+1)/(n-1) on a balanced equality graph.

    For every v' in P_v and w' in P_w: 1 at v' and w', -1 at the center z, 0 elsewhere.
    For n = 5 also the function that is 0 at z and +1/-1 on the two outer vertices of
    each triangle.
    """
    verdict = classify_equality(g, encode=False)
    if verdict.kind is not EqualityKind.BALANCED_BIPARTITE_COMPLEMENT or g.n <= 3:
        raise VerdictMismatchError(f"{to_graph6(g)} is not a balanced bipartite complement with n > 3")
    p_v, p_w = verdict.parts
    z = verdict.center
    functions = []
    for a in p_v:
        for b in p_w:
            f = indicator(g.n, [a, b])
            f[z] = -1.0
            functions.append(f)
    if g.n == 5:
        f = np.zeros(g.n)
        f[[p_v[0], p_w[0]]] = 1.0
        f[[p_v[1], p_w[1]]] = -1.0
        functions.append(f)
    return functions


class EqualityConditions(BaseModel):
    """Combinatorial conditions for every estimate at a pair (v, w) to be an equality."""

    pair: Tuple[int, int]
    A: int
    D: float
    common_pairwise_adjacent: bool
    common_full_degree: bool
    a_is_floor: bool  # A = max(1, d(v)+d(w)+2-n)
    equal_degrees: bool
    d_extremal: bool  # D in {(n-1)/2, n-2}

    @property
    def all_hold(self) -> bool:
        return (
            self.common_pairwise_adjacent
            and self.common_full_degree
            and self.a_is_floor
            and self.equal_degrees
            and self.d_extremal
        )


def proof_equality_conditions(g: Graph, v: int, w: int) -> EqualityConditions:
    if v == w or g.has_edge(v, w):
        raise AdjacentPairError(v, w)
    common = g.common_neighbors(v, w)
    if not common:
        raise EmptyCommonNeighborhoodError(v, w)
    n = g.n
    dv, dw = g.degree(v), g.degree(w)
    A = len(common)
    return EqualityConditions(
        pair=(v, w),
        A=A,
        D=(dv + dw) / 2,
        common_pairwise_adjacent=all(g.has_edge(x, y) for i, x in enumerate(common) for y in common[i + 1 :]),
        common_full_degree=all(g.degree(x) == n - 1 for x in common),
        a_is_floor=A == max(1, dv + dw + 2 - n),
        equal_degrees=dv == dw,
        d_extremal=dv + dw in (n - 1, 2 * (n - 2)),
    )


class AddedEdge(BaseModel):
    u: int
    v: int
    lambda_n: float
    exceeds: bool


class EdgeRemovalReport(BaseModel):
    """lambda_n of two K_k sharing a vertex, and of every graph obtained by adding one edge."""

    k: int
    n: int
    target: ExactFraction
    base_lambda: float
    base_matches: bool
    additions: List[AddedEdge]

    @property
    def demonstrated(self) -> bool:
        """Every added edge strictly raises lambda_n, so removing it strictly lowers it."""
        return self.base_matches and all(edge.exceeds for edge in self.additions)


def edge_removal_demo(k: int, solver: str = "jacobi") -> EdgeRemovalReport:
    if k < 3:
        raise ParameterError(f"edge removal demo needs clique size k >= 3, got {k}")
    g = glued_complete(k)
    n = g.n
    target = Fraction(n + 1, n - 1)
    base = largest_eigenvalue(g, solver=solver)
    additions = []
    for u, v in complement(g).edges():
        value = largest_eigenvalue(add_edge(g, u, v), solver=solver)
        additions.append(AddedEdge(u=u, v=v, lambda_n=value, exceeds=value > float(target) + ACCEPT_TOL))
    logger.info(f"glued_complete({k}): lambda_n={base:.12f}, {len(additions)} single-edge additions")
    return EdgeRemovalReport(
        k=k,
        n=n,
        target=target,
        base_lambda=base,
        base_matches=abs(base - float(target)) <= EIGENPAIR_TOL,
        additions=additions,
    )
