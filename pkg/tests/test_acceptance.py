"""End-to-end checks over many watermarks: round trips, structure, relabelling and damage."""

import numpy as np
import pytest

from sipmark.base_codec import indeg_s
from sipmark.bitonic import decode_f1, encode_f1
from sipmark.errors import SipmarkError
from sipmark.flow_graph import FlowGraph, check_reducible, find_hamiltonian_path, permute_ids
from sipmark.fullbitonic import decode_f2, encode_f2
from sipmark.graph_io import deserialize, serialize
from sipmark.models import BitonicKind
from sipmark.sip_analysis import check_properties, decompose_bitonic
from sipmark.watermark import decode_sip, encode_watermark

from .conftest import is_all_ones


def _round_trip(w):
    p = encode_watermark(w)
    via_f1 = decode_f1(encode_f1(p))
    via_f2 = decode_f2(encode_f2(p))
    assert via_f1 == via_f2 == p
    assert decode_sip(via_f1) == w
    assert check_properties(decompose_bitonic(p.elements), p.elements).all_passed


def _random_watermarks(seed, count, bound=2 ** 64):
    rng = np.random.default_rng(seed)
    values = []
    while len(values) < count:
        w = int(rng.integers(2, bound, dtype=np.uint64))
        if not is_all_ones(w):
            values.append(w)
    return values


class TestRoundTrips:
    """Test that both graph variants carry every watermark back."""

    def test_small_range(self):
        """Test every accepted w below 2048."""
        for w in range(2, 2048):
            if not is_all_ones(w):
                _round_trip(w)

    @pytest.mark.slow
    def test_sixteen_bit_range(self):
        """Test every accepted w in [2, 65535]."""
        for w in range(2, 65536):
            if not is_all_ones(w):
                _round_trip(w)


class TestStructure:
    """Test graph invariants on random 64-bit watermarks."""

    def test_random_watermarks(self):
        """Test sizes, degrees, reducibility and the unique path."""
        for w in _random_watermarks(seed=2024, count=1000):
            p = encode_watermark(w)
            n_star = p.n_star
            decomposition = decompose_bitonic(p.elements)
            redirects = sum(1 for b in decomposition.subsequences[1:] if b.kind is BitonicKind.FULL_BITONIC)

            for graph, expected_indeg in ((encode_f1(p), decomposition.k),
                                          (encode_f2(p), decomposition.k - redirects)):
                assert graph.node_count == n_star + 2
                assert graph.edge_count == 2 * n_star + 1
                assert indeg_s(graph) == expected_indeg
                assert all(graph.out_degree(node) == 2 for node in range(1, n_star + 1))
                assert check_reducible(graph)
                assert find_hamiltonian_path(graph).nodes == tuple(range(n_star + 1, -1, -1))

            assert decode_sip(decode_f2(encode_f2(p))) == w


class TestRelabelInvariance:
    """Test extraction after renaming node ids."""

    def test_permuted_ids(self, toolkit):
        """Test 100 watermarks, both variants, under 10 random renamings each."""
        rng = np.random.default_rng(7)
        for w in _random_watermarks(seed=11, count=100, bound=2 ** 32):
            for variant in ("f1", "f2"):
                graph = toolkit.embed(w, variant).graph
                for _ in range(10):
                    mapping = rng.permutation(graph.node_count).tolist()
                    renamed = deserialize(serialize(permute_ids(graph, mapping)))
                    assert toolkit.extract(renamed).watermark == w


def _single_edge_variants(graph, rng, additions):
    for edge in graph.sorted_edges():
        yield FlowGraph(graph.node_count, graph.edges - {edge})
    added = 0
    while added < additions:
        a, b = (int(x) for x in rng.integers(0, graph.node_count, size=2))
        if a != b and (a, b) not in graph.edges:
            added += 1
            yield FlowGraph(graph.node_count, graph.edges | {(a, b)})


class TestDamage:
    """Test that damaged graphs never yield an unflagged watermark."""

    @pytest.mark.parametrize("w, variant", [(20, "f1"), (45, "f2")])
    def test_single_edge_damage(self, toolkit, w, variant):
        """Test every single-edge deletion and 200 random single-edge additions."""
        graph = toolkit.embed(w, variant).graph
        rng = np.random.default_rng(w)
        counts = {"recovered": 0, "different": 0, "error": 0}
        for damaged in _single_edge_variants(graph, rng, additions=200):
            try:
                result = toolkit.extract(damaged)
            except SipmarkError:
                counts["error"] += 1
                continue
            counts["recovered" if result.watermark == w else "different"] += 1
            # the damaged graph has the wrong edge count for any embedding
            assert not toolkit.verify(damaged).decode_consistent

        assert sum(counts.values()) == graph.edge_count + 200
        assert counts["error"] > 0
