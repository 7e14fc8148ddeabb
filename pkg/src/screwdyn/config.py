"""Configuration management for screwdyn."""

from __future__ import annotations

import logging
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from screwdyn.models.enums import FDScheme

logger = logging.getLogger(__name__)


def find_env_file() -> Path | None:
    """Find .env file at git root (project root)."""
    # Search up for git root and use .env there
    current = Path.cwd()
    for parent in [current, *current.parents]:
        if (parent / ".git").exists():
            env_file = parent / ".env"
            if env_file.exists():
                return env_file
            break
    # Fallback to current directory
    local_env = Path.cwd() / ".env"
    if local_env.exists():
        return local_env
    return None


class Settings(BaseSettings):
    """
    Defaults for the CLI and the verification suites.

    Loaded from ``SCREWDYN_*`` environment variables or a ``.env`` file. Every
    value here is a default only: command-line flags and run-config files win.
    """

    model_config = SettingsConfigDict(
        env_prefix="SCREWDYN_",
        env_file=find_env_file(),
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    log_level: str = Field(
        default="WARNING",
        description="Logging level",
    )

    # Finite-difference oracle
    fd_step: float = Field(
        default=1e-6,
        description="Default step h (s) for central differences",
        gt=0,
    )
    fd_scheme: FDScheme = Field(
        default=FDScheme.CENTRAL_2,
        description="Default finite-difference stencil",
    )

    # Evaluation / verification
    workers: int = Field(
        default=1,
        description="Threads used to evaluate trajectory samples",
        ge=1,
    )
    check_samples: int = Field(
        default=1000,
        description="Random states drawn per invariant suite",
        ge=1,
    )
    check_seed: int = Field(
        default=0,
        description="Seed for the random states of `screwdyn check`",
    )
    bench_reps: int = Field(
        default=10000,
        description="Evaluations timed by `screwdyn bench`",
        ge=1,
    )
    float_digits: int = Field(
        default=17,
        description="Significant digits written to output CSV (17 = lossless)",
        ge=1,
        le=17,
    )


# Singleton instance
_settings: Settings | None = None


def get_settings() -> Settings:
    """Singleton accessor; initialized once at first call."""
    global _settings
    if _settings is None:
        _settings = Settings()
        logger.debug(f"Loaded settings: {_settings.model_dump()}")
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next ``get_settings`` re-reads the env."""
    global _settings
    _settings = None


def configure_logging(level: str | None = None) -> None:
    """Configure root logging once for a CLI invocation."""
    logging.basicConfig(
        level=(level or get_settings().log_level).upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
