import logging
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Set, Tuple, Union

from .config import CodecConfig
from .errors import MalformedGraphError, NotSelfInvertingError
from .flow_graph import Edge, FlowGraph
from .sip_analysis import BitonicDecomposition, decompose_bitonic, require_properties
from .watermark import SelfInvertingPermutation

logger = logging.getLogger(__name__)


@dataclass
class DecodeWorkspace:
    """Intermediate decode state, one per decode call.

    ``flipped`` is the graph T (non-path edges reversed, t removed),
    ``tops`` is R, ``extra_tops`` is R', ``ordered_tops`` is R* and
    ``adjacency`` is the undirected graph H.
    """

    n_star: int
    source: int
    flipped: List[Edge]
    tops: Set[int]
    extra_tops: Set[int] = field(default_factory=set)
    ordered_tops: List[int] = field(default_factory=list)
    adjacency: List[List[int]] = field(default_factory=list)
    components: List[List[int]] = field(default_factory=list)
    starts: List[int] = field(default_factory=list)
    discovered: List[List[int]] = field(default_factory=list)
    ell_max: Optional[int] = None


class BaseGraphCodec(ABC):
    """Base class for the permutation flow-graph codecs.

    Subclasses decide where each subsequence top points to on encode and
    which extra tops to recover on decode; everything else is shared.
    """

    def __init__(self, variant_name: str, config: Optional[CodecConfig] = None):
        self.variant_name = variant_name
        self.config = config or CodecConfig()

    def encode(self, p: Union[SelfInvertingPermutation, Sequence[int]]) -> FlowGraph:
        """Encode pi* into a flow-graph on n*+2 nodes with 2n*+1 edges."""
        if not isinstance(p, SelfInvertingPermutation):
            p = SelfInvertingPermutation(tuple(p))
        if self.config.validate_properties:
            decomposition = require_properties(p.elements)
        else:
            decomposition = decompose_bitonic(p.elements)

        n_star = p.n_star
        source = n_star + 1
        edges = [(i + 1, i) for i in range(n_star, -1, -1)]
        for index, subsequence in enumerate(decomposition):
            edges.append((subsequence.top, self._top_target(index, decomposition, source)))
            for a, b in zip(subsequence.elements, subsequence.elements[1:]):
                edges.append((a, b) if a < b else (b, a))

        graph = FlowGraph.from_edges(n_star + 2, edges, source=source)
        logger.debug(f"{self.variant_name}: encoded n*={n_star} into {graph.edge_count} edges, "
                     f"indeg(s)={graph.in_degree(source)}")
        return graph

    @abstractmethod
    def _top_target(self, index: int, decomposition: BitonicDecomposition, source: int) -> int:
        """Node the top of subsequence ``index`` (0-based) points to."""
        pass

    @abstractmethod
    def _collect_extra_tops(self, workspace: DecodeWorkspace) -> None:
        """Variant-specific recovery of tops that do not point to s."""
        pass

    def decode(self, g: FlowGraph) -> SelfInvertingPermutation:
        """Extract pi* from a canonically labelled graph."""
        permutation, _ = self.decode_with_workspace(g)
        return permutation

    def decode_with_workspace(self, g: FlowGraph) -> Tuple[SelfInvertingPermutation, DecodeWorkspace]:
        workspace = self._flip(g)
        self._collect_extra_tops(workspace)
        self._order_tops(workspace)
        self._build_components(workspace)
        self._walk_components(workspace)
        permutation = self._assemble(workspace)
        logger.debug(f"{self.variant_name}: R={sorted(workspace.tops, reverse=True)} "
                     f"R'={sorted(workspace.extra_tops, reverse=True)} starts={workspace.starts} "
                     f"l_max={workspace.ell_max}")
        return permutation, workspace

    def _flip(self, g: FlowGraph) -> DecodeWorkspace:
        # drop the path edges (u(i+1), u(i)) for i = 0..n* and node t, reverse the rest
        n_star = g.node_count - 2
        if n_star < 3 or n_star % 2 == 0:
            raise MalformedGraphError(f"malformed watermark graph: {g.node_count} nodes cannot hold an odd n* >= 3")
        source = g.node_count - 1

        path_edges = 0
        flipped = []
        for a, b in g.edges:
            if a == b + 1:
                path_edges += 1
            elif a != 0 and b != 0:
                flipped.append((b, a))
        if path_edges != n_star + 1:
            raise MalformedGraphError(f"malformed watermark graph: {path_edges} of {n_star + 1} path edges present")

        tops = set()
        remaining = []
        for a, b in flipped:
            if a == source:
                tops.add(b)
            else:
                remaining.append((a, b))
        if not tops:
            raise MalformedGraphError("malformed watermark graph: no edge enters s")
        return DecodeWorkspace(n_star=n_star, source=source, flipped=remaining, tops=tops)

    def _order_tops(self, workspace: DecodeWorkspace) -> None:
        ordered = sorted(workspace.tops | workspace.extra_tops, reverse=True)
        for top in ordered:
            if not 1 <= top <= workspace.n_star:
                raise MalformedGraphError(f"malformed watermark graph: top {top} outside u1..u{workspace.n_star}")
        if len(ordered) < 2:
            raise MalformedGraphError("malformed watermark graph: fewer than two subsequence tops")
        workspace.ordered_tops = ordered

    def _build_components(self, workspace: DecodeWorkspace) -> None:
        node_count = workspace.n_star + 2
        adjacency: List[List[int]] = [[] for _ in range(node_count)]
        for a, b in workspace.flipped:
            if a == b:
                raise MalformedGraphError(f"malformed watermark graph: self-loop at u{a}")
            adjacency[a].append(b)
            adjacency[b].append(a)
        workspace.adjacency = adjacency

        owner = [0] * node_count
        covered = 0
        for top in workspace.ordered_tops:
            if owner[top]:
                raise MalformedGraphError(f"malformed watermark graph: tops {owner[top]} and {top} share a component")
            owner[top] = top
            nodes = [top]
            queue = deque([top])
            degree_sum = 0
            while queue:
                node = queue.popleft()
                neighbours = adjacency[node]
                if len(neighbours) > 2 or len(set(neighbours)) != len(neighbours):
                    raise MalformedGraphError(f"malformed watermark graph: component C({top}) is not a simple path")
                degree_sum += len(neighbours)
                for neighbour in neighbours:
                    if not 1 <= neighbour <= workspace.n_star:
                        raise MalformedGraphError(f"malformed watermark graph: u{neighbour} inside C({top})")
                    if owner[neighbour] == top:
                        continue
                    if owner[neighbour]:
                        raise MalformedGraphError(
                            f"malformed watermark graph: tops {owner[neighbour]} and {top} share a component")
                    owner[neighbour] = top
                    nodes.append(neighbour)
                    queue.append(neighbour)
            if degree_sum // 2 != len(nodes) - 1:
                raise MalformedGraphError(f"malformed watermark graph: component C({top}) contains a cycle")
            workspace.components.append(nodes)
            covered += len(nodes)

        if covered != workspace.n_star:
            raise MalformedGraphError(
                f"malformed watermark graph: components cover {covered} of {workspace.n_star} nodes")

    def _walk_components(self, workspace: DecodeWorkspace) -> None:
        adjacency = workspace.adjacency
        k = len(workspace.ordered_tops)
        for i, (top, nodes) in enumerate(zip(workspace.ordered_tops, workspace.components), start=1):
            if i < k:
                start = min(nodes) if len(adjacency[top]) == 2 else max(nodes)
            else:
                start = workspace.ell_max
                if start not in nodes:
                    raise MalformedGraphError(f"malformed watermark graph: l_max={start} is not in C({top})")
            if len(adjacency[start]) > 1:
                raise MalformedGraphError(f"malformed watermark graph: BFS start u{start} is not an endpoint of C({top})")

            order = _bfs(adjacency, start)
            workspace.starts.append(start)
            workspace.discovered.append(order)
            if i == 1:
                first = order[::-1]
                workspace.ell_max = first.index(max(first)) + 1

    def _assemble(self, workspace: DecodeWorkspace) -> SelfInvertingPermutation:
        discovered = workspace.discovered
        elements = list(reversed(discovered[0]))
        for order in discovered[1:-1]:
            elements.extend(order)
        elements.extend(reversed(discovered[-1]))
        try:
            return SelfInvertingPermutation(tuple(elements))
        except NotSelfInvertingError as e:
            raise MalformedGraphError(f"malformed watermark graph: decoded sequence fails SiP validation ({e})") from e


def _bfs(adjacency: List[List[int]], start: int) -> List[int]:
    order = [start]
    visited = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for neighbour in adjacency[node]:
            if neighbour not in visited:
                visited.add(neighbour)
                order.append(neighbour)
                queue.append(neighbour)
    return order


def indeg_s(g: FlowGraph) -> int:
    """Number of edges entering the header node."""
    return g.in_degree(g.source)
