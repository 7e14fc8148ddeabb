"""Invariant and oracle suites (exit 1 on any failure)."""

import json
from pathlib import Path

import typer

from screwdyn.checks import run_checks
from screwdyn.cli import display
from screwdyn.cli.inputs import open_model, open_run
from screwdyn.config import get_settings
from screwdyn.models.run_config import CosineTrajectorySpec
from screwdyn.trajectory import CosineTrajectory


def check(
    model: str = typer.Option(None, "--model", "-m", help="Shipped model name or model file"),
    config: Path = typer.Option(None, "--config", "-c", help="Run config; its cosine trajectory drives the FD ladder"),
    samples: int = typer.Option(None, "--samples", "-n", min=1, help="Random states per suite"),
    seed: int = typer.Option(None, "--seed", help="Seed for the random states"),
    json_output: bool = typer.Option(False, "--json", "-j", help="Output raw JSON"),
) -> None:
    """Check the closed-form results against structure and reference oracles.

    Symmetry, skew-symmetry and null-product identities, algebraically
    equivalent forms, finite differences along a trajectory, the energy
    balance, and the textbook 2R expressions when the model is the planar
    2R arm. Exits 1 when any suite is over tolerance, so it can gate CI.
    """
    settings = get_settings()
    cfg = open_run(model, config)
    chain = open_model(str(cfg.model))

    traj = None
    duration = 10.0
    if config is not None and isinstance(cfg.trajectory, CosineTrajectorySpec):
        traj = CosineTrajectory.from_spec(cfg.trajectory, chain.n)
        duration = cfg.trajectory.duration

    report = run_checks(
        chain,
        samples=samples or settings.check_samples,
        seed=settings.check_seed if seed is None else seed,
        traj=traj,
        duration=duration,
    )
    data = report.to_dict()

    if json_output:
        print(json.dumps(data, indent=2))
    else:
        display.display_check_report(data)

    if not report.clean:
        raise typer.Exit(1)
