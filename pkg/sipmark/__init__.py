"""
sipmark: watermark integers as self-inverting permutations and encode them
into reducible permutation flow-graphs.
"""

from .base_codec import BaseGraphCodec, DecodeWorkspace, indeg_s
from .bitonic import BitonicCodec, decode_f1, encode_f1
from .config import ToolkitConfig, load_config
from .errors import SipmarkError
from .flow_graph import (
    FlowGraph,
    HamiltonianPath,
    canonicalize,
    check_reducible,
    find_hamiltonian_path,
    permute_ids,
    relabel_from_path,
)
from .fullbitonic import FullBitonicCodec, decode_f2, encode_f2
from .graph_io import deserialize, export_dot, read_graph, serialize, write_graph
from .models import Variant
from .sip_analysis import check_properties, classify, decompose_bitonic
from .toolkit import WatermarkToolkit
from .watermark import SelfInvertingPermutation, Watermark, decode_sip, encode_watermark, sip_from_bits

__version__ = "0.1.0"

__all__ = [
    'BaseGraphCodec', 'DecodeWorkspace', 'indeg_s',
    'BitonicCodec', 'encode_f1', 'decode_f1',
    'FullBitonicCodec', 'encode_f2', 'decode_f2',
    'ToolkitConfig', 'load_config', 'SipmarkError',
    'FlowGraph', 'HamiltonianPath', 'canonicalize', 'check_reducible',
    'find_hamiltonian_path', 'permute_ids', 'relabel_from_path',
    'deserialize', 'export_dot', 'read_graph', 'serialize', 'write_graph',
    'Variant', 'check_properties', 'classify', 'decompose_bitonic',
    'WatermarkToolkit',
    'SelfInvertingPermutation', 'Watermark', 'decode_sip', 'encode_watermark', 'sip_from_bits',
]
