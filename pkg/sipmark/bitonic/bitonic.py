from typing import Optional, Sequence, Union

from ..base_codec import BaseGraphCodec, DecodeWorkspace
from ..config import CodecConfig
from ..flow_graph import FlowGraph
from ..sip_analysis import BitonicDecomposition
from ..watermark import SelfInvertingPermutation


class BitonicCodec(BaseGraphCodec):
    """Codec for F1[pi*]: the top of every bitonic subsequence points to s."""

    def __init__(self, config: Optional[CodecConfig] = None):
        super().__init__("f1", config)

    def _top_target(self, index: int, decomposition: BitonicDecomposition, source: int) -> int:
        return source

    def _collect_extra_tops(self, workspace: DecodeWorkspace) -> None:
        # every top is already a head of an edge into s
        pass


_codec = BitonicCodec()


def encode_f1(p: Union[SelfInvertingPermutation, Sequence[int]]) -> FlowGraph:
    return _codec.encode(p)


def decode_f1(g: FlowGraph) -> SelfInvertingPermutation:
    return _codec.decode(g)
