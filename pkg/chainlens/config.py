"""
Configuration management for chainlens.

This module uses Pydantic settings to handle environment variables
and configuration with type validation and default values.
"""

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Runtime settings with environment variable support.

    Every field can be overridden with a ``CHAINLENS_``-prefixed environment
    variable (``CHAINLENS_LOG=DEBUG``) or a ``.env`` file. Command-line flags
    take precedence over these defaults.
    """

    # Logging verbosity (CHAINLENS_LOG)
    log: str = "INFO"

    # Ingestion
    workers: int = 1
    max_file_bytes: int = 128 * 1024 * 1024

    # Spam episode detection
    min_degree: int = 10
    min_count: int = 5
    max_gap: int = 10

    # Extranonce run segmentation; the step and idle gates are off unless set
    reset_threshold: float = 0.5
    max_step_rate: int | None = None
    max_idle: int | None = None

    # Protocol constants used by reports
    blocks_per_day: int = 144
    maturity: int = 100

    model_config = SettingsConfigDict(
        env_prefix="CHAINLENS_", env_file=".env", extra="ignore"
    )


settings = Settings()


class RunConfig(BaseModel):
    """Options for one command-line run; unset values fall back to ``settings``."""

    inputs: list[Path] = Field(default_factory=list)
    out: Path = Path("out")
    workers: int = Field(default_factory=lambda: settings.workers, ge=1)
    min_height: int = Field(default=0, ge=0)
    max_height: int | None = Field(default=None, ge=0)
    min_degree: int = Field(default_factory=lambda: settings.min_degree, ge=1)
    min_count: int = Field(default_factory=lambda: settings.min_count, ge=1)
    max_gap: int = Field(default_factory=lambda: settings.max_gap, ge=0)
    reset_threshold: float = Field(
        default_factory=lambda: settings.reset_threshold, gt=0.0, le=1.0
    )
    max_step_rate: int | None = Field(
        default_factory=lambda: settings.max_step_rate, ge=1
    )
    max_idle: int | None = Field(default_factory=lambda: settings.max_idle, ge=1)
    fmt: Literal["csv", "json"] = "csv"

    @model_validator(mode="after")
    def _check_range(self) -> "RunConfig":
        if self.max_height is not None and self.min_height > self.max_height:
            raise ValueError(
                f"--min-height {self.min_height} above --max-height {self.max_height}"
            )
        return self
