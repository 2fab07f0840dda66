"""
Exception hierarchy for the sipmark toolkit.

Every error carries a ``stage`` so the command line can report
``error=<stage>:<detail>`` without inspecting exception types.
"""

from typing import Optional


class SipmarkError(ValueError):
    """Base class for all domain errors."""

    stage = "internal"

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail

    def to_line(self) -> str:
        """Single-line machine-parseable form used by the CLI."""
        detail = " ".join(str(self.detail).split())
        return f"error={self.stage}:{detail}"


class ConfigError(SipmarkError):
    stage = "config"


class InvalidWatermarkError(SipmarkError):
    """Watermark value outside the accepted range."""

    stage = "watermark"


class UnsupportedWatermarkError(InvalidWatermarkError):
    """Watermark whose binary form has no 0 bit (2^n - 1)."""


class NotSelfInvertingError(SipmarkError):
    stage = "sip"


class NotWatermarkSipError(SipmarkError):
    """A valid SiP that does not carry a watermark."""

    stage = "sip"


class BitonicError(SipmarkError):
    stage = "bitonic"


class PropertyViolationError(SipmarkError):
    stage = "properties"

    def __init__(self, detail: str, failures=None):
        super().__init__(detail)
        self.failures = list(failures or [])


class ConsistencyError(SipmarkError):
    stage = "consistency"


class GraphParseError(SipmarkError):
    stage = "parse"

    def __init__(self, detail: str, line: Optional[int] = None):
        if line is not None:
            detail = f"line {line}: {detail}"
        super().__init__(detail)
        self.line = line


class NotFlowGraphError(SipmarkError):
    stage = "reducibility"


class HamiltonianPathError(SipmarkError):
    stage = "hamiltonian"


class MalformedGraphError(SipmarkError):
    stage = "decode"


class InvalidGraphError(SipmarkError):
    """Flow-graph value that cannot be built (ids out of range, duplicate edges)."""

    stage = "graph"


class TamperError(SipmarkError):
    stage = "tamper"
