#!/usr/bin/env python3
"""
screwdyn - closed-form inverse dynamics from the terminal.

Usage:
    screwdyn idyn --model kuka_iiwa14          # Q, Q̇, Q̈ along the demo motion
    screwdyn idyn --config run.json            # ... along a configured motion
    screwdyn check --model two_r               # invariant + oracle suites
    screwdyn bench --model kuka_iiwa14         # per-evaluation timing
    screwdyn model validate robot.json         # lint a model file
"""

import typer
from rich.console import Console

from screwdyn.cli import __version__
from screwdyn.cli.commands import bench, check, idyn, model
from screwdyn.config import configure_logging

app = typer.Typer(
    name="screwdyn",
    help="Inverse dynamics of serial chains, with first and second time derivatives.",
    epilog=(
        "Examples: [cyan]screwdyn check -m kuka_iiwa14[/cyan] · "
        "[cyan]screwdyn idyn -m two_r --order 2 --out q.csv[/cyan]"
    ),
    rich_markup_mode="rich",
    no_args_is_help=True,
    add_completion=False,
)

_PANEL_DYNAMICS = "Dynamics"
_PANEL_VERIFY = "Verification"
_PANEL_MODELS = "Models"

app.add_typer(model.model_app, name="model", help="Chain model files", rich_help_panel=_PANEL_MODELS)

console = Console()


def version_callback(value: bool) -> None:
    """Show version and exit."""
    if value:
        console.print(f"screwdyn version {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        False, "--version", "-v", callback=version_callback, is_eager=True, help="Show version"
    ),
    log_level: str = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING (default from SCREWDYN_LOG_LEVEL)"),
) -> None:
    """
    screwdyn - closed-form inverse dynamics with Q̇ and Q̈.

    Exit codes: 0 success, 1 a check failed, 2 bad model or configuration.
    """
    configure_logging(log_level)


app.command(name="idyn", rich_help_panel=_PANEL_DYNAMICS)(idyn.idyn)
app.command(name="bench", rich_help_panel=_PANEL_DYNAMICS)(bench.bench)
app.command(name="check", rich_help_panel=_PANEL_VERIFY)(check.check)


def cli() -> None:
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    cli()
