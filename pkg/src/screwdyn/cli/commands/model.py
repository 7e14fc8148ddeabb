"""Model file commands."""

import typer

from screwdyn.chain import SHIPPED_MODELS, describe, dump_model
from screwdyn.cli import display
from screwdyn.cli.inputs import open_model

model_app = typer.Typer(help="Chain model files")


@model_app.command("validate")
def validate(
    model: str = typer.Argument(..., help="Shipped model name or model file"),
) -> None:
    """Parse and check a model file (exit 2 with the offending field if invalid)."""
    chain = open_model(model)
    display.display_model(describe(chain))
    display.display_success(f"{model} is a valid {chain.n}-joint chain")


@model_app.command("dump")
def dump(
    model: str = typer.Argument(..., help="Shipped model name or model file"),
) -> None:
    """Print the canonical JSON form of a model."""
    print(dump_model(open_model(model)), end="")


@model_app.command("list")
def list_models() -> None:
    """Models shipped with the package."""
    for name in SHIPPED_MODELS:
        display.console.print(f"[bold]{name}[/]")
