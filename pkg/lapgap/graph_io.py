"""
Graph interchange: graph6 (via networkx) and the plain-text edge list format.

The edge list format is a first line holding ``n`` followed by one ``u v`` line per
edge; blank lines and ``#`` comments are ignored.
"""

from pathlib import Path
import re
from typing import Union

import networkx as nx

from lapgap.config import MAX_VERTICES
from lapgap.errors import Graph6Error, GraphError
from lapgap.graph import Graph, from_edge_list

GRAPH6_HEADER = ">>graph6<<"

_INT_LINE = re.compile(r"^\d+$")
_PAIR_LINE = re.compile(r"^\d+\s+\d+$")


def to_networkx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def from_networkx(G: nx.Graph) -> Graph:
    """Convert a networkx graph, numbering nodes in sorted order."""
    nodes = sorted(G.nodes)
    index = {node: i for i, node in enumerate(nodes)}
    return from_edge_list(len(nodes), [(index[u], index[v]) for u, v in G.edges() if u != v])


def _graph6_order(payload: str) -> int:
    """Vertex count from the graph6 size header, checked before any decoding."""
    if not payload:
        raise Graph6Error("empty graph6 string")
    codes = [ord(c) - 63 for c in payload[:4]]
    if any(not 0 <= c <= 63 for c in codes):
        raise Graph6Error(f"malformed graph6 header: {payload[:4]!r}")
    if codes[0] < 63:
        return codes[0]
    if len(codes) < 4 or codes[1] == 63:
        raise Graph6Error(f"graph6 header too large or truncated: {payload[:8]!r}")
    return (codes[1] << 12) | (codes[2] << 6) | codes[3]


def parse_graph6(text: str) -> Graph:
    """
    Decode one graph6 string.

    Args:
        text: A graph6 encoding, optionally prefixed with ``>>graph6<<``.

    Returns:
        The decoded graph.
    """
    payload = text.strip()
    if payload.startswith(GRAPH6_HEADER):
        payload = payload[len(GRAPH6_HEADER) :]
    n = _graph6_order(payload)
    if not 1 <= n <= MAX_VERTICES:
        raise Graph6Error(f"graph6 vertex count {n} outside 1..{MAX_VERTICES}")
    try:
        G = nx.from_graph6_bytes(payload.encode("ascii"))
    except (nx.NetworkXError, ValueError, IndexError) as e:
        raise Graph6Error(f"malformed graph6 payload {payload!r}: {e}") from e
    return from_networkx(G)


def to_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(to_networkx(g), nodes=list(range(g.n)), header=False).decode("ascii").strip()


def parse_edge_list(text: str) -> Graph:
    lines = _content_lines(text)
    if not lines or not _INT_LINE.match(lines[0]):
        raise GraphError("edge list must start with a line holding the vertex count")
    edges = []
    for line in lines[1:]:
        if not _PAIR_LINE.match(line):
            raise GraphError(f"malformed edge line: {line!r}")
        u, v = line.split()
        edges.append((int(u), int(v)))
    return from_edge_list(int(lines[0]), edges)


def to_edge_list(g: Graph) -> str:
    return "\n".join([str(g.n), *(f"{u} {v}" for u, v in g.edges())]) + "\n"


def parse_graph_text(text: str) -> Graph:
    """Parse either format. Digits never occur in graph6, so a leading integer line means edge list."""
    lines = _content_lines(text)
    if not lines:
        raise GraphError("no graph found in input")
    if _INT_LINE.match(lines[0]):
        return parse_edge_list(text)
    if len(lines) > 1:
        raise Graph6Error(f"expected a single graph6 line, got {len(lines)}")
    return parse_graph6(lines[0])


def read_graph_file(path: Union[str, Path]) -> Graph:
    try:
        text = Path(path).read_text(encoding="ascii")
    except UnicodeDecodeError as e:
        raise GraphError(f"{path} is not an ASCII graph6 or edge-list file") from e
    return parse_graph_text(text)


def _content_lines(text: str):
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines
