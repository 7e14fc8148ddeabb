"""Time second-order inverse dynamics."""

import json
from pathlib import Path

import typer

from screwdyn.bench import MIN_STABLE_REPS, run_bench
from screwdyn.cli import display
from screwdyn.cli.inputs import open_model, open_run
from screwdyn.config import get_settings


def bench(
    model: str = typer.Option(None, "--model", "-m", help="Shipped model name or model file"),
    config: Path = typer.Option(None, "--config", "-c", help="Run config (reps, seed, order)"),
    reps: int = typer.Option(None, "--reps", "-r", min=1, help="Timed evaluations"),
    seed: int = typer.Option(None, "--seed", help="Seed for the random states"),
    order: int = typer.Option(None, "--order", "-o", min=0, max=2, help="Derivative order to time"),
    json_output: bool = typer.Option(False, "--json", "-j", help="Output raw JSON"),
) -> None:
    """Mean and median wall time per evaluation, with a result checksum."""
    settings = get_settings()
    cfg = open_run(model, config)
    chain = open_model(str(cfg.model))

    if reps is None:
        reps = cfg.reps if config is not None else settings.bench_reps
    report = run_bench(
        chain,
        reps=reps,
        seed=cfg.seed if seed is None else seed,
        order=cfg.order if order is None else order,
    )

    if json_output:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        display.display_bench_report(report.to_dict())
        if reps < MIN_STABLE_REPS:
            display.display_warning(f"only {reps} reps; use at least {MIN_STABLE_REPS} for a stable mean")
