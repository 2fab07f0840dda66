"""Tests for the flow-graph model, Hamiltonian path recovery and reducibility."""

import networkx as nx
import pytest

from sipmark.errors import HamiltonianPathError, InvalidGraphError, NotFlowGraphError
from sipmark.flow_graph import (
    FlowGraph,
    HamiltonianPath,
    canonicalize,
    check_reducible,
    find_hamiltonian_path,
    permute_ids,
    relabel_from_path,
    to_networkx,
)


def _path_graph(node_count, extra=()):
    edges = [(i + 1, i) for i in range(node_count - 1)]
    return FlowGraph.from_edges(node_count, edges + list(extra))


class TestFlowGraph:
    """Test construction and degree queries."""

    def test_defaults(self):
        """Test that the source defaults to the highest id."""
        graph = _path_graph(4)
        assert graph.source == 3
        assert graph.edge_count == 3
        assert graph.sinks() == [0]

    @pytest.mark.parametrize("kwargs", [
        {"node_count": 0},
        {"node_count": 2, "edges": frozenset({(0, 2)})},
        {"node_count": 2, "source": 5},
    ])
    def test_invalid(self, kwargs):
        """Test that out-of-range values are rejected."""
        with pytest.raises(InvalidGraphError):
            FlowGraph(**kwargs)

    def test_duplicate_edges(self):
        """Test that from_edges refuses a repeated edge."""
        with pytest.raises(InvalidGraphError, match="duplicate"):
            FlowGraph.from_edges(3, [(2, 1), (1, 0), (2, 1)])

    def test_degrees_of_watermark_graph(self, f1_w20):
        """Test the degree profile of F1 for w=20."""
        assert f1_w20.node_count == 13
        assert f1_w20.edge_count == 23
        assert all(f1_w20.out_degree(node) == 2 for node in range(1, 12))
        assert f1_w20.out_degree(0) == 0
        assert f1_w20.in_degree(12) == 3
        assert f1_w20.successors[11] == (10, 12)
        assert f1_w20.predecessors[11] == (8, 10, 12)
        assert f1_w20.has_edge(2, 7)
        assert not f1_w20.has_edge(7, 2)

    def test_to_networkx(self, f1_w20):
        """Test the networkx view."""
        digraph = to_networkx(f1_w20)
        assert digraph.number_of_nodes() == 13
        assert digraph.number_of_edges() == 23
        assert nx.has_path(digraph, 12, 0)


class TestHamiltonianPath:
    """Test path recovery and relabelling."""

    def test_canonical_graph(self, f1_w20):
        """Test that a canonical graph yields s, u11, ..., u1, t."""
        path = find_hamiltonian_path(f1_w20)
        assert path.nodes == tuple(range(12, -1, -1))
        assert path.source == 12
        assert path.sink == 0
        assert len(path) == 13

    def test_relabel_invariance(self, f1_w20):
        """Test that any renaming canonicalizes back to the same graph."""
        mapping = [5, 0, 12, 3, 9, 1, 11, 2, 7, 4, 10, 6, 8]
        permuted = permute_ids(f1_w20, mapping)
        assert permuted != f1_w20
        assert permuted.source == 8
        assert canonicalize(permuted) == f1_w20

    def test_no_unique_sink(self):
        """Test that zero or two sinks are rejected."""
        two_sinks = FlowGraph.from_edges(3, [(2, 1), (2, 0)])
        with pytest.raises(HamiltonianPathError, match="found 2"):
            find_hamiltonian_path(two_sinks)
        cycle = FlowGraph.from_edges(2, [(0, 1), (1, 0)])
        with pytest.raises(HamiltonianPathError, match="found 0"):
            find_hamiltonian_path(cycle)

    def test_ambiguous_predecessor(self):
        """Test that a forward skip edge makes the peeling face a choice."""
        graph = _path_graph(4, extra=[(3, 1)])
        with pytest.raises(HamiltonianPathError, match="2 unplaced predecessors"):
            find_hamiltonian_path(graph)

    def test_relabel_rejects_bad_path(self, f1_w20):
        """Test that relabelling checks the path it is given."""
        with pytest.raises(HamiltonianPathError):
            relabel_from_path(f1_w20, HamiltonianPath((12, 11)))
        with pytest.raises(HamiltonianPathError, match="not an edge"):
            relabel_from_path(f1_w20, HamiltonianPath((12, 10, 11, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0)))

    def test_permute_ids_rejects_non_permutation(self, f1_w20):
        """Test that a mapping must be a permutation."""
        with pytest.raises(InvalidGraphError):
            permute_ids(f1_w20, [0] * 13)


class TestReducibility:
    """Test the T1/T2 collapse."""

    def test_watermark_graphs_are_reducible(self, f1_w20, f2_w45):
        """Test that both graph variants collapse to one node."""
        assert check_reducible(f1_w20)
        assert check_reducible(f2_w45)

    def test_loop_with_two_entries(self, irreducible_triangle):
        """Test the classic irreducible triangle."""
        assert not check_reducible(irreducible_triangle)

    def test_self_loop_and_back_edge(self):
        """Test that natural loops and self-loops are reducible."""
        graph = FlowGraph.from_edges(4, [(3, 2), (2, 1), (1, 0), (1, 2), (2, 2), (0, 3)])
        assert check_reducible(graph)

    def test_single_node(self):
        """Test that a lone node without edges is already collapsed."""
        assert check_reducible(FlowGraph(1))

    def test_unreachable_node(self):
        """Test that a node unreachable from the source is not a flow-graph."""
        graph = FlowGraph.from_edges(3, [(2, 1)])
        with pytest.raises(NotFlowGraphError, match="1 nodes unreachable"):
            check_reducible(graph)
