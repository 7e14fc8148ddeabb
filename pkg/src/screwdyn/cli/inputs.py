"""Resolve ``--model`` / ``--config`` into library objects for the commands.

Every failure here is a configuration error: it is shown through the display
helpers and ends the command with exit code 2.
"""

from __future__ import annotations

from pathlib import Path

import typer

from screwdyn.chain import SHIPPED_MODELS, ChainModel, load_model, shipped_model_path
from screwdyn.cli.display import display_error, display_info
from screwdyn.errors import ScrewdynError
from screwdyn.evaluate import load_run_config
from screwdyn.models.run_config import RunConfig

EXIT_CONFIG = 2


def fail(message: str, hint: str | None = None) -> typer.Exit:
    display_error(message)
    if hint:
        display_info(hint)
    return typer.Exit(EXIT_CONFIG)


def resolve_model_path(value: str) -> Path:
    """A shipped model name (``two_r``, ``kuka_iiwa14``, ``pendulum``) or a file path."""
    if value in SHIPPED_MODELS:
        return shipped_model_path(value)
    path = Path(value)
    if not path.exists():
        raise fail(
            f"Model file not found: {value}",
            f"Use a path or one of the shipped models: {', '.join(SHIPPED_MODELS)}",
        )
    return path


def open_model(value: str) -> ChainModel:
    path = resolve_model_path(value)
    try:
        return load_model(path)
    except (ScrewdynError, OSError) as e:
        raise fail(f"{path}: {e}") from None


def open_run(model: str | None, config: Path | None) -> RunConfig:
    """Run config from ``--config``, or the default run of ``--model``.

    ``--model`` overrides the config's model when both are given.
    """
    if config is None and model is None:
        raise fail("Nothing to run", "Pass --model NAME|PATH or --config RUN.json")
    if config is not None:
        try:
            cfg = load_run_config(config)
        except ScrewdynError as e:
            raise fail(str(e)) from None
    else:
        cfg = RunConfig(model=Path("."))
    if model is not None:
        cfg = cfg.model_copy(update={"model": resolve_model_path(model)})
    return cfg
