"""Soft linear-time check for encode + decode on large permutations."""

import logging
import time

import numpy as np
import pytest

from sipmark.bitonic import BitonicCodec
from sipmark.fullbitonic import FullBitonicCodec
from sipmark.watermark import sip_from_bits

logger = logging.getLogger(__name__)


def _random_bits(count, seed):
    bits = np.random.default_rng(seed).integers(0, 2, size=count).tolist()
    bits[0], bits[1] = 1, 0
    return bits


def _encode_decode_seconds(codec, p):
    started = time.perf_counter()
    graph = codec.encode(p)
    decoded = codec.decode(graph)
    elapsed = time.perf_counter() - started
    assert decoded == p
    return elapsed


@pytest.mark.slow
class TestLinearity:
    """Test that doubling n* does not triple the running time."""

    @pytest.mark.parametrize("codec", [BitonicCodec(), FullBitonicCodec()], ids=["f1", "f2"])
    def test_doubling(self, codec):
        """Test encode+decode at n* near one and two million."""
        small = sip_from_bits(_random_bits(500_000, seed=1))
        large = sip_from_bits(_random_bits(1_000_000, seed=2))
        assert small.n_star == 1_000_001

        # warm up allocator and caches once
        _encode_decode_seconds(codec, sip_from_bits(_random_bits(50_000, seed=3)))
        small_seconds = _encode_decode_seconds(codec, small)
        large_seconds = _encode_decode_seconds(codec, large)
        ratio = large_seconds / small_seconds
        logger.info(f"{codec.variant_name}: {small_seconds:.2f}s -> {large_seconds:.2f}s, ratio {ratio:.2f}")
        assert ratio < 3.0
