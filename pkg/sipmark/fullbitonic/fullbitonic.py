import logging
from typing import Optional, Sequence, Union

from ..base_codec import BaseGraphCodec, DecodeWorkspace
from ..config import FullBitonicConfig
from ..errors import ConsistencyError, MalformedGraphError
from ..flow_graph import FlowGraph
from ..models import BitonicKind
from ..sip_analysis import BitonicDecomposition
from ..watermark import SelfInvertingPermutation

logger = logging.getLogger(__name__)


class FullBitonicCodec(BaseGraphCodec):
    """Codec for F2[pi*].

    Starts from F1 and, for every full-bitonic subsequence S(i) with i >= 2,
    replaces the edge (top(S(i)), s) by (top(S(i)), top(S(i-1))). This keeps
    the indegree of s well below the number of subsequences.
    """

    def __init__(self, config: Optional[FullBitonicConfig] = None):
        super().__init__("f2", config or FullBitonicConfig())

    def _top_target(self, index: int, decomposition: BitonicDecomposition, source: int) -> int:
        subsequence = decomposition[index]
        if index == 0 or subsequence.kind is not BitonicKind.FULL_BITONIC:
            return source
        target = decomposition[index - 1].top
        if target <= subsequence.top:
            raise ConsistencyError(
                f"redirect target u{target} is not above top u{subsequence.top} of b{index + 1}"
            )
        return target

    def _collect_extra_tops(self, workspace: DecodeWorkspace) -> None:
        out_degree = [0] * (workspace.n_star + 2)
        for a, _ in workspace.flipped:
            out_degree[a] += 1

        redirected = [(a, b) for a, b in workspace.flipped if out_degree[b] >= 2]
        extra_tops = {b for _, b in redirected}
        if getattr(self.config, "require_top_tail", True):
            known_tops = workspace.tops | extra_tops
            for a, b in redirected:
                if a not in known_tops:
                    raise MalformedGraphError(
                        f"malformed watermark graph: redirected edge into u{b} starts at u{a}, which is not a top"
                    )

        workspace.extra_tops = extra_tops
        workspace.flipped = [(a, b) for a, b in workspace.flipped if out_degree[b] < 2]
        if extra_tops:
            logger.debug(f"f2: recovered redirected tops {sorted(extra_tops, reverse=True)}")


_codec = FullBitonicCodec()


def encode_f2(p: Union[SelfInvertingPermutation, Sequence[int]]) -> FlowGraph:
    return _codec.encode(p)


def decode_f2(g: FlowGraph) -> SelfInvertingPermutation:
    return _codec.decode(g)
