"""
Edge-list serialization and DOT rendering of flow-graphs.

File format (UTF-8, LF line endings)::

    SIPMARK-RPG v1
    nodes <N>
    edges <M>
    <from> <to>        # M lines, ascending (from, to) order

Readers accept edges in any order and any id assignment; ids only have to
lie in 0..N-1.
"""

import logging
import re
from pathlib import Path
from typing import Union

import graphviz

from .errors import GraphParseError, HamiltonianPathError
from .flow_graph import FlowGraph, canonicalize

logger = logging.getLogger(__name__)

HEADER = "SIPMARK-RPG v1"

_COUNT_LINE = re.compile(r"(nodes|edges) (0|[1-9][0-9]*)")
_EDGE_LINE = re.compile(r"(0|[1-9][0-9]*) (0|[1-9][0-9]*)")


def serialize(g: FlowGraph) -> bytes:
    lines = [HEADER, f"nodes {g.node_count}", f"edges {g.edge_count}"]
    lines.extend(f"{a} {b}" for a, b in g.sorted_edges())
    return ("\n".join(lines) + "\n").encode("utf-8")


def _count(line: str, keyword: str, number: int) -> int:
    match = _COUNT_LINE.fullmatch(line)
    if match is None or match.group(1) != keyword:
        raise GraphParseError(f"expected '{keyword} <count>', got {line[:40]!r}", number)
    return int(match.group(2))


def deserialize(data: bytes) -> FlowGraph:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise GraphParseError(f"not UTF-8 text ({e.reason})") from e

    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for number, line in enumerate(lines, start=1):
        if "\r" in line:
            raise GraphParseError("carriage return in line ending", number)

    if not lines or lines[0] != HEADER:
        raise GraphParseError(f"missing header {HEADER!r}", 1)
    if len(lines) < 3:
        raise GraphParseError("truncated header", len(lines) + 1)
    node_count = _count(lines[1], "nodes", 2)
    edge_count = _count(lines[2], "edges", 3)
    if node_count < 1:
        raise GraphParseError("graph must have at least one node", 2)

    body = lines[3:]
    if len(body) != edge_count:
        number = 3 + min(len(body), edge_count) + 1
        raise GraphParseError(f"header announces {edge_count} edges, found {len(body)}", number)

    edges = set()
    for number, line in enumerate(body, start=4):
        match = _EDGE_LINE.fullmatch(line)
        if match is None:
            raise GraphParseError(f"expected '<from> <to>', got {line[:40]!r}", number)
        a, b = int(match.group(1)), int(match.group(2))
        if a >= node_count or b >= node_count:
            raise GraphParseError(f"node id out of range 0..{node_count - 1}", number)
        if (a, b) in edges:
            raise GraphParseError(f"duplicate edge {a} {b}", number)
        edges.add((a, b))

    return FlowGraph(node_count, frozenset(edges))


def read_graph(path: Union[str, Path]) -> FlowGraph:
    graph = deserialize(Path(path).read_bytes())
    logger.debug(f"Read {graph.node_count}-node graph from {path}")
    return graph


def write_graph(path: Union[str, Path], g: FlowGraph) -> None:
    Path(path).write_bytes(serialize(g))
    logger.debug(f"Wrote {g.node_count}-node graph to {path}")


def export_dot(g: FlowGraph) -> str:
    """Render ``g`` as DOT text; non-path edges are drawn dashed."""
    try:
        g = canonicalize(g)
    except HamiltonianPathError as e:
        logger.warning(f"Rendering graph with its stored ids: {e}")

    dot = graphviz.Digraph(name="rpg")
    sinks = g.sinks()
    for node in range(g.node_count):
        if node == g.source:
            dot.node(f"u{node}", label="s")
        elif len(sinks) == 1 and node == sinks[0]:
            dot.node(f"u{node}", label="t")
        else:
            dot.node(f"u{node}")
    for a, b in g.sorted_edges():
        if a == b + 1:
            dot.edge(f"u{a}", f"u{b}")
        else:
            dot.edge(f"u{a}", f"u{b}", style="dashed")
    return dot.source
