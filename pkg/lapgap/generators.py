"""
Named graph families, labeled enumeration and random sampling.

Canonical labelings:
- complete(n): vertices 0..n-1.
- complete_bipartite(a, b): parts {0..a-1} and {a..a+b-1}.
- complete_minus_edge(n): K_n without the edge (0, 1).
- glued_complete(k): two copies of K_k sharing vertex 0; the cliques are
  {0, 1..k-1} and {0, k..2k-2}, so n = 2k-1.
- cycle(n): i ~ i+1 (mod n).
- path(n): i ~ i+1.
- star(n): center 0, leaves 1..n-1.
"""

from math import comb
from typing import Callable, Dict, Iterator, Optional

from loguru import logger
import numpy as np

from lapgap.config import EXHAUSTIVE_MAX_N
from lapgap.errors import GraphError
from lapgap.graph import Graph, from_edge_list, graph_from_mask, is_connected, vertex_pairs

GraphPredicate = Callable[[Graph], bool]


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise GraphError(message)


def complete(n: int) -> Graph:
    _require(n >= 1, f"complete graph needs n >= 1, got {n}")
    return from_edge_list(n, vertex_pairs(n))


def complete_bipartite(a: int, b: int) -> Graph:
    _require(a >= 1 and b >= 1, f"complete bipartite graph needs both parts nonempty, got ({a}, {b})")
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete_minus_edge(n: int) -> Graph:
    _require(n >= 3, f"complete_minus_edge needs n >= 3, got {n}")
    return from_edge_list(n, [pair for pair in vertex_pairs(n) if pair != (0, 1)])


def glued_complete(k: int) -> Graph:
    _require(k >= 2, f"glued_complete needs clique size k >= 2, got {k}")
    left = range(1, k)
    right = range(k, 2 * k - 1)
    edges = [(0, v) for v in range(1, 2 * k - 1)]
    edges += [(u, v) for u in left for v in left if u < v]
    edges += [(u, v) for u in right for v in right if u < v]
    return from_edge_list(2 * k - 1, edges)


def cycle(n: int) -> Graph:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    _require(n >= 1, f"path needs n >= 1, got {n}")
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Graph:
    _require(n >= 2, f"star needs n >= 2, got {n}")
    return from_edge_list(n, [(0, i) for i in range(1, n)])


FAMILIES: Dict[str, Callable[..., Graph]] = {
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "complete_minus_edge": complete_minus_edge,
    "glued_complete": glued_complete,
    "cycle": cycle,
    "path": path,
    "star": star,
}


def generate(family: str, *args: int, **params: int) -> Graph:
    """
    Build a member of a named family.

    Args:
        family: One of :data:`FAMILIES`.
        args: Positional family parameters, e.g. ``generate("complete_bipartite", 2, 3)``.
        params: Keyword family parameters, e.g. ``generate("glued_complete", k=4)``.
    """
    if family not in FAMILIES:
        raise GraphError(f"unknown graph family {family!r}; expected one of {sorted(FAMILIES)}")
    try:
        return FAMILIES[family](*args, **params)
    except TypeError as e:
        raise GraphError(f"bad parameters for {family}: {e}") from e


def labeled_graph_count(n: int) -> int:
    return 1 << comb(n, 2)


def enumerate_labeled_graphs(
    n: int,
    predicate: Optional[GraphPredicate] = None,
    start: int = 0,
    stop: Optional[int] = None,
) -> Iterator[Graph]:
    """
    Yield every labeled graph on ``n`` vertices once, by increasing edge bitmask.

    Args:
        n: Vertex count. Values above 7 are allowed but logged as a warning.
        predicate: Optional filter; only graphs it accepts are yielded.
        start: First bitmask (inclusive), for partitioned sweeps.
        stop: Last bitmask (exclusive); defaults to ``2^C(n,2)``.
    """
    if n < 1:
        raise GraphError(f"enumeration needs n >= 1, got {n}")
    if n > EXHAUSTIVE_MAX_N:
        logger.warning(f"Enumerating labeled graphs on n={n} vertices ({labeled_graph_count(n)} graphs)")
    pairs = vertex_pairs(n)
    total = labeled_graph_count(n)
    stop = total if stop is None else min(stop, total)
    for mask in range(max(start, 0), stop):
        g = graph_from_mask(n, mask, pairs)
        if predicate is None or predicate(g):
            yield g


def has_no_isolated_vertex(g: Graph) -> bool:
    return all(g.rows)


def random_connected_graph(n: int, rng: np.random.Generator, p: float = 0.5) -> Graph:
    """Sample G(n, p) until the sample is connected."""
    _require(n >= 1, f"random graph needs n >= 1, got {n}")
    pairs = vertex_pairs(n)
    while True:
        keep = rng.random(len(pairs)) < p
        g = from_edge_list(n, [pair for pair, flag in zip(pairs, keep) if flag])
        if is_connected(g):
            return g
