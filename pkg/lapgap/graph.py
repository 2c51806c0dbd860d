"""
Graph - finite simple undirected graphs on at most 64 vertices.

Every adjacency row is a Python int used as a bitset: bit ``w`` of ``rows[v]`` is set
iff ``v ~ w``. Graphs are immutable and hashable, so they can be shared across
parallel workers without copying.

Examples:
    Build a graph and query it::

        g = from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        g.degree(0)                            # 2
        neighborhood_at_distance(g, 0, 2)      # frozenset({2, 3})
        connected_components(g).count          # 1
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from lapgap.config import MAX_VERTICES
from lapgap.errors import GraphError

Edge = Tuple[int, int]


def popcount(x: int) -> int:
    """Number of set bits (``int.bit_count`` needs Python 3.10)."""
    return bin(x).count("1")


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    Attributes:
    - n: Vertex count, 1 <= n <= 64.
    - rows: Adjacency bitsets, one per vertex. Symmetric with an empty diagonal.
    """

    n: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.rows) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise GraphError(f"row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"loop edge at vertex {v}")
            for w in iter_bits(row):
                if not self.rows[w] >> v & 1:
                    raise GraphError(f"adjacency is not symmetric at ({v}, {w})")

    @classmethod
    def _trusted(cls, n: int, rows: Tuple[int, ...]) -> "Graph":
        """Skip validation for rows built by this module (enumeration hot path)."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count}, edges={list(self.edges())})"

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.rows[v]))

    def common_neighbors(self, v: int, w: int) -> List[int]:
        return list(iter_bits(self.rows[v] & self.rows[w]))

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def degrees(self) -> Tuple[int, ...]:
        return tuple(popcount(row) for row in self.rows)

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    @property
    def max_degree(self) -> int:
        return max(self.degrees())

    @property
    def min_degree(self) -> int:
        return min(self.degrees())

    def isolated_vertices(self) -> List[int]:
        return [v for v, row in enumerate(self.rows) if row == 0]

    def edges(self) -> Iterator[Edge]:
        """Yield each edge once as ``(u, v)`` with ``u < v``."""
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                yield (u, u + 1 + v)


class ComponentPartition(BaseModel):
    """Connected components, ordered by their smallest vertex; each component is sorted."""

    model_config = ConfigDict(frozen=True)

    components: Tuple[Tuple[int, ...], ...]

    @model_validator(mode="after")
    def _check_partition(self) -> "ComponentPartition":
        seen = set()
        for component in self.components:
            if not component:
                raise ValueError("components must be nonempty")
            if seen.intersection(component):
                raise ValueError("components must be pairwise disjoint")
            seen.update(component)
        if seen != set(range(len(seen))):
            raise ValueError("components must cover 0..n-1")
        return self

    @property
    def count(self) -> int:
        return len(self.components)

    @property
    def sizes(self) -> List[int]:
        return [len(component) for component in self.components]

    def smallest(self) -> Tuple[int, ...]:
        """The smallest component; ties go to the one with the lowest vertex."""
        return min(self.components, key=len)

    def component_of(self, v: int) -> Tuple[int, ...]:
        for component in self.components:
            if v in component:
                return component
        raise GraphError(f"vertex {v} is not covered by the partition")


# ================================================================
# Construction
# ================================================================


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """
    Build a graph from a list of vertex pairs.

    Duplicate edges and both orientations collapse to a single edge.

    Args:
        n: Vertex count (1..64).
        edges: Pairs ``(u, v)`` with ``u != v`` and ``0 <= u, v < n``.

    Returns:
        The graph with exactly these edges.
    """
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
    rows = [0] * n
    for edge in edges:
        u, v = (int(x) for x in edge)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"loop edge at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._trusted(n, tuple(rows))


def empty_graph(n: int) -> Graph:
    return from_edge_list(n, [])


def vertex_pairs(n: int) -> List[Edge]:
    """The C(n,2) vertex pairs in graph6 order: (0,1), (0,2), (1,2), (0,3), ..."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def graph_from_mask(n: int, mask: int, pairs: Optional[Sequence[Edge]] = None) -> Graph:
    """
    Decode an edge bitmask: bit k set iff the k-th pair of :func:`vertex_pairs` is an edge.

    Args:
        n: Vertex count.
        mask: Edge bitmask in ``[0, 2^C(n,2))``.
        pairs: Precomputed ``vertex_pairs(n)``, passed by enumeration loops.
    """
    if pairs is None:
        pairs = vertex_pairs(n)
    rows = [0] * n
    for k in iter_bits(mask):
        u, v = pairs[k]
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._trusted(n, tuple(rows))


def edge_mask(g: Graph) -> int:
    """Inverse of :func:`graph_from_mask`."""
    mask = 0
    for k, (u, v) in enumerate(vertex_pairs(g.n)):
        if g.rows[u] >> v & 1:
            mask |= 1 << k
    return mask


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph._trusted(g.n, tuple(~row & full & ~(1 << v) for v, row in enumerate(g.rows)))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    """Return a copy of ``g`` with the edge ``(u, v)`` added."""
    return from_edge_list(g.n, [*g.edges(), (u, v)])


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Return the graph with vertex ``i`` renamed to ``perm[i]``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError(f"not a permutation of 0..{g.n - 1}: {list(perm)}")
    return from_edge_list(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def disjoint_union(*graphs: Graph) -> Graph:
    """Place the graphs side by side, shifting labels by the running vertex count."""
    offset = 0
    edges: List[Edge] = []
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return from_edge_list(offset, edges)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Tuple[Graph, Tuple[int, ...]]:
    """
    Subgraph induced on ``vertices``, relabelled ``0..k-1`` in ascending order.

    Returns:
        The subgraph and the mapping: ``mapping[i]`` is the original index of new vertex ``i``.
    """
    mapping = tuple(sorted(set(vertices)))
    if not mapping:
        raise GraphError("induced subgraph needs at least one vertex")
    position = {v: i for i, v in enumerate(mapping)}
    rows = []
    for v in mapping:
        row = 0
        for w in iter_bits(g.rows[v]):
            if w in position:
                row |= 1 << position[w]
        rows.append(row)
    return Graph._trusted(len(mapping), tuple(rows)), mapping


def remove_isolated_vertices(g: Graph) -> Tuple[Graph, Tuple[int, ...]]:
    """Induced subgraph on the non-isolated vertices, with its vertex mapping."""
    kept = [v for v, row in enumerate(g.rows) if row]
    if not kept:
        raise GraphError("every vertex is isolated")
    return induced_subgraph(g, kept)


# ================================================================
# Distance and connectivity queries
# ================================================================


def distance_layers(g: Graph, v: int) -> List[int]:
    """BFS layers from ``v`` as bitsets: ``layers[k]`` is N_k(v). Stops at the last nonempty layer."""
    reached = 1 << v
    frontier = reached
    layers = [frontier]
    while True:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= g.rows[u]
        nxt &= ~reached
        if not nxt:
            return layers
        reached |= nxt
        layers.append(nxt)
        frontier = nxt


def neighborhood_at_distance(g: Graph, v: int, k: int) -> FrozenSet[int]:
    """
    N_k(v): the vertices at combinatorial distance exactly ``k`` from ``v``.

    ``k=0`` gives ``{v}`` and ``k=1`` gives N(v). Empty when no vertex is that far.
    """
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
    if k < 0:
        raise GraphError(f"distance must be non-negative, got {k}")
    layers = distance_layers(g, v)
    if k >= len(layers):
        return frozenset()
    return frozenset(iter_bits(layers[k]))


def component_mask(g: Graph, v: int) -> int:
    mask = 0
    for layer in distance_layers(g, v):
        mask |= layer
    return mask


def connected_components(g: Graph) -> ComponentPartition:
    remaining = g.vertex_mask
    components = []
    while remaining:
        root = (remaining & -remaining).bit_length() - 1
        mask = component_mask(g, root)
        components.append(tuple(iter_bits(mask)))
        remaining &= ~mask
    return ComponentPartition(components=tuple(components))


def is_connected(g: Graph) -> bool:
    return component_mask(g, 0) == g.vertex_mask


def is_complete(g: Graph) -> bool:
    full = g.vertex_mask
    return all(row == full & ~(1 << v) for v, row in enumerate(g.rows))


def is_complete_bipartite(g: Graph) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """
    Detect a complete bipartite graph with both parts nonempty.

    Returns:
        ``(P, Q)`` with ``0 in P`` when every cross pair is an edge and no pair inside a
        part is; ``None`` otherwise.
    """
    q_mask = g.rows[0]
    if not q_mask:
        return None
    p_mask = g.vertex_mask & ~q_mask
    for v in iter_bits(p_mask):
        if g.rows[v] != q_mask:
            return None
    for v in iter_bits(q_mask):
        if g.rows[v] != p_mask:
            return None
    return tuple(iter_bits(p_mask)), tuple(iter_bits(q_mask))


def _two_colouring(g: Graph, root: int) -> Tuple[int, int]:
    even = odd = 0
    for k, layer in enumerate(distance_layers(g, root)):
        if k % 2:
            odd |= layer
        else:
            even |= layer
    return even, odd


def _component_is_bipartite(g: Graph, root: int) -> bool:
    even, odd = _two_colouring(g, root)
    return all(not (g.rows[v] & even) for v in iter_bits(even)) and all(
        not (g.rows[v] & odd) for v in iter_bits(odd)
    )


def is_bipartite(g: Graph) -> bool:
    return all(_component_is_bipartite(g, component[0]) for component in connected_components(g).components)


def has_bipartite_component(g: Graph) -> bool:
    """True iff some connected component with at least one edge is bipartite."""
    return any(
        len(component) >= 2 and _component_is_bipartite(g, component[0])
        for component in connected_components(g).components
    )
