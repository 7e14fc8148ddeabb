"""Evaluate Q, Q̇ and Q̈ along a trajectory and write them to CSV."""

import json
from pathlib import Path

import typer

from screwdyn.cli import display
from screwdyn.cli.inputs import fail, open_run
from screwdyn.errors import ScrewdynError
from screwdyn.evaluate import run_idyn


def idyn(
    model: str = typer.Option(None, "--model", "-m", help="Shipped model name or model file"),
    config: Path = typer.Option(None, "--config", "-c", help="Run config (JSON)"),
    order: int = typer.Option(None, "--order", "-o", min=0, max=2, help="0: Q, 1: +Q̇, 2: +Q̈"),
    out: Path = typer.Option(None, "--out", help="Output CSV (default from config, else idyn.csv)"),
    workers: int = typer.Option(None, "--workers", min=1, help="Evaluation threads"),
    json_output: bool = typer.Option(False, "--json", "-j", help="Output summary as JSON"),
) -> None:
    """Inverse dynamics along a trajectory.

    Without --config the demo cosine motion is used: amplitude 0.5 rad,
    ω_i = 0.6 + 0.1·i rad/s, 10 s at 1 kHz.
    """
    cfg = open_run(model, config)
    try:
        summary = run_idyn(cfg, order=order, output=out, workers=workers)
    except (ScrewdynError, OSError) as e:
        raise fail(str(e)) from None

    if json_output:
        print(json.dumps(summary.to_dict(), indent=2))
    else:
        display.display_idyn_summary(summary.to_dict())
