"""Reading and writing graphs: graph6, DOT and an edge-list JSON.

graph6 goes through networkx, which implements the format bit-exactly; DOT
goes through pydot. The edge-list JSON is `{"n": int, "edges": [[u, v], ...]}`
with u < v in lexicographic order.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import networkx as nx
import pydot

from satforge.errors import GraphFormatError, InvalidArgumentError
from satforge.graph_core import Graph

logger = logging.getLogger(__name__)

FORMATS = ("graph6", "dot", "json")

SUFFIXES = {
    ".g6": "graph6",
    ".graph6": "graph6",
    ".dot": "dot",
    ".gv": "dot",
    ".json": "json",
}


def to_networkx(graph: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(graph.order))
    out.add_edges_from(graph.edges())
    return out


def from_networkx(nxg: nx.Graph) -> Graph:
    """Relabel the nodes 0..n-1 in sorted order and copy the edges."""
    if nxg.is_directed() or nxg.is_multigraph():
        raise GraphFormatError("only simple undirected graphs are supported")
    try:
        index = {node: i for i, node in enumerate(sorted(nxg.nodes))}
    except TypeError:
        index = {node: i for i, node in enumerate(nxg.nodes)}
    try:
        edges = ((index[u], index[v]) for u, v in nxg.edges)
        return Graph.from_edges(len(index), edges)
    except InvalidArgumentError as exc:
        raise GraphFormatError(str(exc)) from exc


def to_graph6(graph: Graph) -> str:
    return nx.to_graph6_bytes(to_networkx(graph), header=False).decode("ascii").strip()


def from_graph6(text: str) -> Graph:
    line = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
    if not line:
        raise GraphFormatError("empty graph6 input")
    try:
        nxg = nx.from_graph6_bytes(line.encode("ascii"))
    except (ValueError, UnicodeEncodeError, nx.NetworkXError) as exc:
        raise GraphFormatError(f"invalid graph6 string {line!r}: {exc}") from exc
    return from_networkx(nxg)


def to_dot(graph: Graph, name: str = "G") -> str:
    dot = pydot.Dot(name, graph_type="graph")
    for v in range(graph.order):
        dot.add_node(pydot.Node(str(v)))
    for u, v in graph.edges():
        dot.add_edge(pydot.Edge(str(u), str(v)))
    return dot.to_string()


def to_edge_json(graph: Graph) -> dict[str, Any]:
    return {"n": graph.order, "edges": [[u, v] for u, v in graph.edges()]}


def from_edge_json(obj: Any) -> Graph:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphFormatError('expected {"n": int, "edges": [[u, v], ...]}')
    n, edges = obj["n"], obj["edges"]
    if not isinstance(n, int) or isinstance(n, bool) or not isinstance(edges, list):
        raise GraphFormatError("edge-list JSON has the wrong shape")
    pairs: list[tuple[int, int]] = []
    for edge in edges:
        if (
            not isinstance(edge, list)
            or len(edge) != 2
            or not all(isinstance(x, int) for x in edge)
        ):
            raise GraphFormatError(f"bad edge entry {edge!r}")
        pairs.append((edge[0], edge[1]))
    try:
        return Graph.from_edges(n, pairs)
    except InvalidArgumentError as exc:
        raise GraphFormatError(str(exc)) from exc


def detect_format(path: Path, text: str) -> str:
    fmt = SUFFIXES.get(path.suffix.lower())
    if fmt is not None:
        return fmt
    return "json" if text.lstrip().startswith("{") else "graph6"


def read_graph(path: Path) -> Graph:
    try:
        text = path.read_text()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc
    fmt = detect_format(path, text)
    if fmt == "json":
        try:
            return from_edge_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"{path}: invalid JSON: {exc}") from exc
    if fmt == "dot":
        raise GraphFormatError(f"{path}: DOT is an export-only format")
    return from_graph6(text)


def render(graph: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return to_graph6(graph) + "\n"
    if fmt == "dot":
        return to_dot(graph)
    if fmt == "json":
        return json.dumps(to_edge_json(graph)) + "\n"
    raise InvalidArgumentError(
        f"unknown graph format {fmt!r}; expected one of {FORMATS}"
    )


def write_graph(graph: Graph, path: Path, fmt: str = "graph6") -> None:
    content = render(graph, fmt)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content)
    except OSError as exc:
        raise GraphFormatError(f"cannot write {path}: {exc}") from exc
    logger.info("wrote %s graph on %d vertices to %s", fmt, graph.order, path)
