"""
Configuration for the sipmark toolkit.

Settings are read from a JSON file (see ``config_example.json``) with one
section per codec variant plus shared sections. Every section is optional.
"""

import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import ConfigError
from .models import Variant

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "SIPMARK_CONFIG"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class WatermarkSettings(BaseModel):
    max_bits: int = Field(64, ge=2, le=64, description="Largest accepted watermark bit length")


class CodecConfig(BaseModel):
    """Settings shared by both flow-graph codecs."""
    validate_properties: bool = Field(True, description="Check P1-P3 before encoding")


class FullBitonicConfig(CodecConfig):
    require_top_tail: bool = Field(True, description="Redirected edges must start at a top")


class ExtractionSettings(BaseModel):
    auto_order: List[Variant] = Field(default_factory=lambda: [Variant.F2, Variant.F1])

    @field_validator("auto_order")
    @classmethod
    def check_auto_order(cls, value):
        if not value:
            raise ValueError("auto_order must name at least one variant")
        if Variant.AUTO in value:
            raise ValueError("auto_order may only contain f1 and f2")
        return value


class TamperSettings(BaseModel):
    insert_ratio: float = Field(0.5, ge=0.0, le=1.0, description="Probability that an op inserts an edge")
    max_attempts: int = Field(1000, ge=1, description="Draws allowed to find a free edge slot")


class LoggingSettings(BaseModel):
    level: str = "WARNING"

    @field_validator("level")
    @classmethod
    def check_level(cls, value):
        value = value.upper()
        if value not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level {value}")
        return value


class ToolkitConfig(BaseModel):
    watermark: WatermarkSettings = Field(default_factory=WatermarkSettings)
    f1: CodecConfig = Field(default_factory=CodecConfig)
    f2: FullBitonicConfig = Field(default_factory=FullBitonicConfig)
    extraction: ExtractionSettings = Field(default_factory=ExtractionSettings)
    tamper: TamperSettings = Field(default_factory=TamperSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


def load_config(config_path: Optional[Union[str, Path]] = None) -> ToolkitConfig:
    """Load configuration from a JSON file, falling back to defaults."""
    if config_path is None:
        config_path = os.getenv(CONFIG_ENV_VAR)
    if not config_path:
        return ToolkitConfig()

    path = Path(config_path)
    if not path.exists():
        logger.warning(f"Config file {path} not found, using defaults")
        return ToolkitConfig()

    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from e
    try:
        config = ToolkitConfig.model_validate_json(text)
    except ValidationError as e:
        raise ConfigError(f"invalid configuration in {path}: {e.errors()[0]['msg']}") from e
    logger.info(f"Loaded configuration from {path}")
    return config


def configure_logging(level: str = "WARNING") -> None:
    """Configure the root logger once, on stderr."""
    logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING),
                        format=LOG_FORMAT, stream=sys.stderr)
