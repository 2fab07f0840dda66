"""
Pydantic models for reports and results produced by the toolkit.
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, computed_field


class Variant(str, Enum):
    """Flow-graph variants."""
    F1 = "f1"
    F2 = "f2"
    AUTO = "auto"


class BitonicKind(str, Enum):
    """Position of the top element inside a bitonic subsequence."""
    I_BITONIC = "i-bitonic"
    D_BITONIC = "d-bitonic"
    FULL_BITONIC = "full-bitonic"


class PropertyReport(BaseModel):
    """Outcome of the P1-P3 checks on a bitonic decomposition."""
    p1: bool = Field(..., description="b1 full-bitonic, middles full- or d-bitonic")
    p2: bool = Field(..., description="b1 holds max and min and has length ceil(n*/2)")
    p3: bool = Field(..., description="last(bk) equals the index of max inside b1")
    failures: List[str] = Field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return self.p1 and self.p2 and self.p3


class SubsequenceSummary(BaseModel):
    elements: List[int]
    kind: BitonicKind
    top: int
    top_index: int
    start_index: int


class InspectReport(BaseModel):
    """Everything derived from a watermark before it is turned into a graph."""
    watermark: int
    bits: str
    n: int
    n_star: int
    permutation: List[int]
    cycles: List[List[int]]
    k: int
    subsequences: List[SubsequenceSummary]
    properties: PropertyReport


class EmbedResult(BaseModel):
    watermark: int
    variant: Variant
    permutation: List[int]
    n: int
    n_star: int
    k: int
    indeg_s: int
    graph: Any = Field(..., exclude=True)


class ExtractResult(BaseModel):
    watermark: int
    permutation: List[int]
    decoder: Variant = Field(..., description="Decoder that succeeded")
    variant: Variant = Field(..., description="Graph family inferred from the redirected tops")
    redirects: int = 0


class VerifyReport(BaseModel):
    nodes: int
    edges: int
    hamiltonian: bool
    reducible: bool
    properties: bool = False
    decode_consistent: bool = False
    watermark: Optional[int] = None
    variant: Optional[Variant] = None
    failures: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.hamiltonian and self.reducible and self.properties and self.decode_consistent


class TamperOutcomeKind(str, Enum):
    RECOVERED = "recovered"
    DIFFERENT = "different"
    ERROR = "error"


class TamperOutcome(BaseModel):
    seed: int
    ops: int
    original: int
    outcome: TamperOutcomeKind
    mutations: List[str]
    watermark: Optional[int] = None
    stage: Optional[str] = None
    detail: Optional[str] = None


class TamperSummary(BaseModel):
    original: int
    ops: int
    first_seed: int
    trials: int
    recovered: int = 0
    different: int = 0
    errors: int = 0
    error_stages: Dict[str, int] = Field(default_factory=dict)

    @computed_field
    @property
    def recovered_fraction(self) -> float:
        return self.recovered / self.trials if self.trials else 0.0
