"""
Flow-graph model shared by both watermark graph codecs.

Canonical ids follow the path order: t = 0, u1 = 1, ..., u(n*) = n*, s = n*+1.
The Hamiltonian path runs s -> u(n*) -> ... -> u1 -> t and every other edge
points from a lower to a higher path position.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import HamiltonianPathError, InvalidGraphError, NotFlowGraphError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class FlowGraph:
    """Directed graph on node ids 0..node_count-1 with a header node ``source``."""

    node_count: int
    edges: FrozenSet[Edge] = field(default_factory=frozenset)
    source: Optional[int] = None

    def __post_init__(self):
        if isinstance(self.node_count, bool) or not isinstance(self.node_count, int) or self.node_count < 1:
            raise InvalidGraphError(f"node count must be a positive integer, got {self.node_count!r}")
        edges = self.edges if isinstance(self.edges, frozenset) else frozenset(self.edges)
        object.__setattr__(self, "edges", edges)
        for a, b in edges:
            if not (0 <= a < self.node_count and 0 <= b < self.node_count):
                raise InvalidGraphError(f"edge ({a}, {b}) outside 0..{self.node_count - 1}")
        if self.source is None:
            object.__setattr__(self, "source", self.node_count - 1)
        elif not 0 <= self.source < self.node_count:
            raise InvalidGraphError(f"source {self.source} outside 0..{self.node_count - 1}")

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[Edge], source: Optional[int] = None) -> "FlowGraph":
        """Build a graph from an edge list, rejecting duplicate directed edges."""
        edge_list = [(int(a), int(b)) for a, b in edges]
        edge_set = frozenset(edge_list)
        if len(edge_set) != len(edge_list):
            seen = set()
            for edge in edge_list:
                if edge in seen:
                    raise InvalidGraphError(f"duplicate edge {edge}")
                seen.add(edge)
        return cls(node_count, edge_set, source)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def successors(self) -> Tuple[Tuple[int, ...], ...]:
        lists: List[List[int]] = [[] for _ in range(self.node_count)]
        for a, b in self.edges:
            lists[a].append(b)
        return tuple(tuple(sorted(targets)) for targets in lists)

    @cached_property
    def predecessors(self) -> Tuple[Tuple[int, ...], ...]:
        lists: List[List[int]] = [[] for _ in range(self.node_count)]
        for a, b in self.edges:
            lists[b].append(a)
        return tuple(tuple(sorted(origins)) for origins in lists)

    def out_degree(self, node: int) -> int:
        return len(self.successors[node])

    def in_degree(self, node: int) -> int:
        return len(self.predecessors[node])

    def sinks(self) -> List[int]:
        return [node for node, targets in enumerate(self.successors) if not targets]

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def has_edge(self, a: int, b: int) -> bool:
        return (a, b) in self.edges


@dataclass(frozen=True)
class HamiltonianPath:
    """Node order s = u(n*+1), u(n*), ..., u1, u0 = t."""

    nodes: Tuple[int, ...]

    @property
    def source(self) -> int:
        return self.nodes[0]

    @property
    def sink(self) -> int:
        return self.nodes[-1]

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[int]:
        return iter(self.nodes)


def find_hamiltonian_path(g: FlowGraph) -> HamiltonianPath:
    """Recover the Hamiltonian path by peeling unique predecessors back from t."""
    sinks = g.sinks()
    if len(sinks) != 1:
        raise HamiltonianPathError(f"no unique Hamiltonian path: expected one sink, found {len(sinks)}")

    predecessors = g.predecessors
    placed = [False] * g.node_count
    current = sinks[0]
    placed[current] = True
    order = [current]
    for _ in range(g.node_count - 1):
        candidates = [node for node in predecessors[current] if not placed[node]]
        if len(candidates) != 1:
            raise HamiltonianPathError(
                f"no unique Hamiltonian path: node {current} has {len(candidates)} unplaced predecessors "
                f"after {len(order)} of {g.node_count} nodes"
            )
        current = candidates[0]
        placed[current] = True
        order.append(current)

    order.reverse()
    return HamiltonianPath(tuple(order))


def relabel_from_path(g: FlowGraph, h: HamiltonianPath) -> FlowGraph:
    """Rename nodes so the i-th node from the end of ``h`` gets id i."""
    node_count = g.node_count
    if len(h.nodes) != node_count or set(h.nodes) != set(range(node_count)):
        raise HamiltonianPathError("path does not visit every node exactly once")
    for a, b in zip(h.nodes, h.nodes[1:]):
        if (a, b) not in g.edges:
            raise HamiltonianPathError(f"path step ({a}, {b}) is not an edge")

    new_id = [0] * node_count
    for position, node in enumerate(h.nodes):
        new_id[node] = node_count - 1 - position
    edges = frozenset((new_id[a], new_id[b]) for a, b in g.edges)
    return FlowGraph(node_count, edges, source=node_count - 1)


def canonicalize(g: FlowGraph) -> FlowGraph:
    return relabel_from_path(g, find_hamiltonian_path(g))


def permute_ids(g: FlowGraph, mapping: Sequence[int]) -> FlowGraph:
    """Rename node ``v`` to ``mapping[v]``."""
    if sorted(mapping) != list(range(g.node_count)):
        raise InvalidGraphError("mapping is not a permutation of the node ids")
    edges = frozenset((mapping[a], mapping[b]) for a, b in g.edges)
    return FlowGraph(g.node_count, edges, source=mapping[g.source])


def to_networkx(g: FlowGraph) -> nx.DiGraph:
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(g.node_count))
    digraph.add_edges_from(g.sorted_edges())
    return digraph


def check_reducible(g: FlowGraph) -> bool:
    """Collapse ``g`` with T1/T2 transformations; reducible iff one node remains.

    T1 deletes a self-loop, T2 merges a node with a unique predecessor into
    that predecessor. The header ``g.source`` is never merged away.
    """
    source = g.source
    reachable = nx.descendants(to_networkx(g), source)
    reachable.add(source)
    if len(reachable) != g.node_count:
        raise NotFlowGraphError(
            f"not a flow-graph: {g.node_count - len(reachable)} nodes unreachable from {source}"
        )

    successors = [set(targets) for targets in g.successors]
    predecessors = [set(origins) for origins in g.predecessors]
    for node in range(g.node_count):
        successors[node].discard(node)
        predecessors[node].discard(node)

    removed = [False] * g.node_count
    remaining = g.node_count
    worklist = deque(range(g.node_count))
    while worklist:
        node = worklist.popleft()
        if removed[node] or node == source or len(predecessors[node]) != 1:
            continue
        (parent,) = predecessors[node]
        successors[parent].discard(node)
        for target in successors[node]:
            predecessors[target].discard(node)
            if target != parent:
                predecessors[target].add(parent)
                successors[parent].add(target)
            worklist.append(target)
        successors[node].clear()
        predecessors[node].clear()
        removed[node] = True
        remaining -= 1

    logger.debug(f"T1/T2 collapse left {remaining} of {g.node_count} nodes")
    return remaining == 1
