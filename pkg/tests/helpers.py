import networkx as nx
import numpy as np

from lapgap.generators import complete_minus_edge, cycle, glued_complete, star
from lapgap.graph import Graph, from_edge_list, is_connected
from lapgap.graph_io import to_networkx

C5 = cycle(5)
STAR5 = star(5)
KMINUS7 = complete_minus_edge(7)
GLUED4 = glued_complete(4)
K3_K3 = from_edge_list(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])

# graph6 of the canonical 5-cycle 0-1-2-3-4-0.
C5_GRAPH6 = "Dhc"
C5_EDGE_LIST = "5\n0 1\n1 2\n2 3\n3 4\n4 0\n"


def oracle_eigenvalues(g: Graph) -> np.ndarray:
    """Normalized Laplacian spectrum through networkx and numpy.linalg.eigvalsh."""
    A = nx.to_numpy_array(to_networkx(g), nodelist=range(g.n))
    scale = 1.0 / np.sqrt(A.sum(axis=1))
    return np.linalg.eigvalsh(np.eye(g.n) - A * np.outer(scale, scale))


def oracle_components(g: Graph) -> int:
    return nx.number_connected_components(to_networkx(g))


def random_graphs(n: int, count: int, seed: int, p: float = 0.5, connected: bool = True):
    """Seeded G(n, p) samples without isolated vertices (and connected unless told otherwise)."""
    rng = np.random.default_rng(seed)
    graphs = []
    while len(graphs) < count:
        edges = [(u, v) for v in range(n) for u in range(v) if rng.random() < p]
        g = from_edge_list(n, edges)
        if all(g.rows) and (not connected or is_connected(g)):
            graphs.append(g)
    return graphs
