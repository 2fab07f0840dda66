import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
from tqdm import tqdm

from .base_codec import BaseGraphCodec, indeg_s
from .bitonic import BitonicCodec
from .config import ToolkitConfig, load_config
from .errors import MalformedGraphError, SipmarkError, TamperError
from .flow_graph import FlowGraph, canonicalize, check_reducible, find_hamiltonian_path, relabel_from_path
from .fullbitonic import FullBitonicCodec
from .models import (
    EmbedResult,
    ExtractResult,
    InspectReport,
    SubsequenceSummary,
    TamperOutcome,
    TamperOutcomeKind,
    TamperSummary,
    Variant,
    VerifyReport,
)
from .sip_analysis import check_properties, decompose_bitonic
from .watermark import Watermark, decode_sip, encode_watermark

logger = logging.getLogger(__name__)


class WatermarkToolkit:
    """
    Main entry point tying the watermark codec to both flow-graph codecs.
    """

    def __init__(self, config: Optional[ToolkitConfig] = None, config_file: Optional[Union[str, Path]] = None):
        """
        Initialize the toolkit with an optional configuration.

        Args:
            config (ToolkitConfig, optional): Parsed configuration.
            config_file (str, optional): Path to a JSON config file, used when
                                         ``config`` is not given.
        """
        self.config = config if config is not None else load_config(config_file)

        # One codec per graph variant
        self.bitonic_codec = BitonicCodec(self.config.f1)
        self.fullbitonic_codec = FullBitonicCodec(self.config.f2)
        self.codecs = {
            Variant.F1: self.bitonic_codec,
            Variant.F2: self.fullbitonic_codec,
        }

    @property
    def max_bits(self) -> int:
        return self.config.watermark.max_bits

    @property
    def max_nodes(self) -> int:
        """Node count of the largest graph a ``max_bits`` watermark embeds into."""
        return 2 * self.max_bits + 3

    def _check_size(self, graph: FlowGraph) -> None:
        if graph.node_count > self.max_nodes:
            raise MalformedGraphError(
                f"graph has {graph.node_count} nodes, a {self.max_bits}-bit watermark graph has at most {self.max_nodes}")

    def codec(self, variant: Union[Variant, str]) -> BaseGraphCodec:
        variant = Variant(variant)
        if variant is Variant.AUTO:
            raise ValueError("'auto' names an extraction order, not a codec")
        return self.codecs[variant]

    def embed(self, w: int, variant: Union[Variant, str] = Variant.F1) -> EmbedResult:
        """
        Encode a watermark into a flow-graph of the requested variant.

        Args:
            w (int): Watermark value
            variant (Variant): f1 or f2

        Returns:
            EmbedResult: The graph together with the sizes reported by the CLI
        """
        variant = Variant(variant)
        permutation = encode_watermark(w, self.max_bits)
        graph = self.codec(variant).encode(permutation)
        decomposition = decompose_bitonic(permutation.elements)
        logger.info(f"Embedded w={w} as {variant.value} graph with {graph.node_count} nodes")
        return EmbedResult(
            watermark=w,
            variant=variant,
            permutation=list(permutation.elements),
            n=(permutation.n_star - 1) // 2,
            n_star=permutation.n_star,
            k=decomposition.k,
            indeg_s=indeg_s(graph),
            graph=graph,
        )

    def extract(self, graph: FlowGraph, variant: Union[Variant, str] = Variant.AUTO) -> ExtractResult:
        """
        Recover the watermark from a graph whose node ids may be arbitrary.

        Args:
            graph (FlowGraph): Graph to decode
            variant (Variant): f1, f2 or auto (tries ``extraction.auto_order``)

        Returns:
            ExtractResult: Watermark, permutation and the decoder that succeeded
        """
        return self._extract(graph, variant, logging.WARNING)

    def _extract(self, graph: FlowGraph, variant: Union[Variant, str], fallback_level: int) -> ExtractResult:
        variant = Variant(variant)
        self._check_size(graph)
        canonical = canonicalize(graph)
        order = list(self.config.extraction.auto_order) if variant is Variant.AUTO else [variant]

        last_error: Optional[SipmarkError] = None
        for candidate in order:
            try:
                permutation, workspace = self.codec(candidate).decode_with_workspace(canonical)
                w = decode_sip(permutation, self.max_bits)
            except SipmarkError as e:
                if len(order) > 1:
                    logger.log(fallback_level, f"{candidate.value} decoder failed: {e}")
                last_error = e
                continue

            detected = Variant.F2 if workspace.extra_tops else Variant.F1
            logger.info(f"Extracted w={w} with the {candidate.value} decoder")
            return ExtractResult(
                watermark=w,
                permutation=list(permutation.elements),
                decoder=candidate,
                variant=detected,
                redirects=len(workspace.extra_tops),
            )
        raise last_error

    def verify(self, graph: FlowGraph) -> VerifyReport:
        """Run every structural check on a graph and collect the failures."""
        failures: List[str] = []
        try:
            self._check_size(graph)
        except SipmarkError as e:
            return VerifyReport(nodes=graph.node_count, edges=graph.edge_count, hamiltonian=False,
                                reducible=False, failures=[e.to_line()])

        canonical = None
        try:
            canonical = relabel_from_path(graph, find_hamiltonian_path(graph))
        except SipmarkError as e:
            failures.append(e.to_line())

        try:
            reducible = check_reducible(canonical if canonical is not None else graph)
            if not reducible:
                failures.append("error=reducibility:graph does not collapse under T1/T2")
        except SipmarkError as e:
            reducible = False
            failures.append(e.to_line())

        report = VerifyReport(
            nodes=graph.node_count,
            edges=graph.edge_count,
            hamiltonian=canonical is not None,
            reducible=reducible,
        )
        if canonical is None:
            report.failures = failures
            return report

        try:
            result = self.extract(canonical)
            report.watermark = result.watermark
            report.variant = result.variant
            properties = check_properties(decompose_bitonic(result.permutation), result.permutation)
            report.properties = properties.all_passed
            failures.extend(properties.failures)
            expected = self.embed(result.watermark, result.variant).graph
            report.decode_consistent = expected == canonical
            if not report.decode_consistent:
                failures.append("error=consistency:re-embedding the decoded watermark gives a different graph")
        except SipmarkError as e:
            failures.append(e.to_line())

        report.failures = failures
        return report

    def inspect(self, w: int) -> InspectReport:
        """Describe pi* for a watermark: cycles, decomposition and properties."""
        permutation = encode_watermark(w, self.max_bits)
        decomposition = decompose_bitonic(permutation.elements)
        watermark = Watermark(w)
        return InspectReport(
            watermark=w,
            bits="".join(str(bit) for bit in watermark.bits),
            n=watermark.n,
            n_star=permutation.n_star,
            permutation=list(permutation.elements),
            cycles=[list(cycle) for cycle in permutation.cycles()],
            k=decomposition.k,
            subsequences=[
                SubsequenceSummary(
                    elements=list(b.elements),
                    kind=b.kind,
                    top=b.top,
                    top_index=b.top_index,
                    start_index=b.start_index,
                )
                for b in decomposition
            ],
            properties=check_properties(decomposition, permutation.elements),
        )

    def tamper(self, graph: FlowGraph, seed: int, ops: int,
               original: Optional[int] = None) -> Tuple[FlowGraph, TamperOutcome]:
        """
        Apply ``ops`` seeded edge insertions/deletions and try to extract again.

        Args:
            graph (FlowGraph): Watermarked graph
            seed (int): RNG seed; the same seed always yields the same mutation
            ops (int): Number of mutations, at least 1
            original (int, optional): Watermark carried by ``graph``; extracted when omitted

        Returns:
            tuple: Mutated graph and the outcome of extracting from it
        """
        if ops < 1:
            raise TamperError(f"ops must be >= 1, got {ops}")
        if original is None:
            original = self.extract(graph).watermark

        settings = self.config.tamper
        mutated, mutations = mutate_graph(graph, seed, ops, settings.insert_ratio, settings.max_attempts)
        outcome = TamperOutcome(seed=seed, ops=ops, original=original,
                                outcome=TamperOutcomeKind.ERROR, mutations=mutations)
        try:
            # failed decoders are the expected case here
            result = self._extract(mutated, Variant.AUTO, logging.DEBUG)
        except SipmarkError as e:
            outcome.stage = e.stage
            outcome.detail = str(e.detail)
            return mutated, outcome

        outcome.watermark = result.watermark
        if result.watermark == original:
            outcome.outcome = TamperOutcomeKind.RECOVERED
        else:
            outcome.outcome = TamperOutcomeKind.DIFFERENT
        return mutated, outcome

    def tamper_campaign(self, graph: FlowGraph, first_seed: int, ops: int, trials: int,
                        progress: bool = False) -> TamperSummary:
        """Run ``trials`` tamper probes on consecutive seeds and count the outcomes."""
        if trials < 1:
            raise TamperError(f"trials must be >= 1, got {trials}")
        original = self.extract(graph).watermark
        summary = TamperSummary(original=original, ops=ops, first_seed=first_seed, trials=trials)

        for seed in tqdm(range(first_seed, first_seed + trials), desc="tamper", disable=not progress):
            _, outcome = self.tamper(graph, seed, ops, original=original)
            if outcome.outcome is TamperOutcomeKind.RECOVERED:
                summary.recovered += 1
            elif outcome.outcome is TamperOutcomeKind.DIFFERENT:
                summary.different += 1
            else:
                summary.errors += 1
                summary.error_stages[outcome.stage] = summary.error_stages.get(outcome.stage, 0) + 1

        logger.info(f"Tamper campaign: {summary.recovered}/{trials} recovered w={original}")
        return summary

    def export_summary(self, summary: TamperSummary, output_path: Union[str, Path]) -> None:
        """Export a tamper summary to a JSON file."""
        path = Path(output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(summary.model_dump_json(indent=2), encoding="utf-8")
        logger.info(f"Tamper summary exported to {path}")


def mutate_graph(graph: FlowGraph, seed: int, ops: int, insert_ratio: float = 0.5,
                 max_attempts: int = 1000) -> Tuple[FlowGraph, List[str]]:
    """Seeded random edge insertions/deletions; returns the graph and a log like ``+3 5``."""
    rng = np.random.default_rng(seed)
    edges = set(graph.edges)
    node_count = graph.node_count
    mutations = []

    for _ in range(ops):
        if edges and rng.random() >= insert_ratio:
            ordered = sorted(edges)
            a, b = ordered[int(rng.integers(len(ordered)))]
            edges.remove((a, b))
            mutations.append(f"-{a} {b}")
            continue

        for _ in range(max_attempts):
            a, b = (int(x) for x in rng.integers(0, node_count, size=2))
            if a != b and (a, b) not in edges:
                break
        else:
            raise TamperError(f"no free edge slot found after {max_attempts} draws")
        edges.add((a, b))
        mutations.append(f"+{a} {b}")

    return FlowGraph(node_count, frozenset(edges), source=graph.source), mutations
