"""Display utilities for the screwdyn CLI with Rich formatting."""

from __future__ import annotations

from typing import Any

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

console = Console()


def _seconds(value: float) -> str:
    """Pick µs / ms / s so timings stay readable."""
    if value < 1e-3:
        return f"{value * 1e6:.1f} µs"
    if value < 1.0:
        return f"{value * 1e3:.3f} ms"
    return f"{value:.3f} s"


def display_error(message: str) -> None:
    """Display error message."""
    console.print(f"[red]✗[/red] {message}")


def display_success(message: str) -> None:
    """Display success message."""
    console.print(f"[green]✓[/green] {message}")


def display_warning(message: str) -> None:
    """Display warning message."""
    console.print(f"[yellow]![/yellow] {message}")


def display_info(message: str) -> None:
    """Display info message."""
    console.print(f"[dim]ℹ[/dim] {message}")


def display_model(data: dict[str, Any]) -> None:
    """One-line summary of a chain as returned by ``chain.describe``."""
    g = ", ".join(f"{x:g}" for x in data.get("gravity", []))
    kinds = data.get("kinds", [])
    table = Table(show_header=False, box=None, padding=(0, 1))
    table.add_column(style="dim")
    table.add_column()
    table.add_row("name", f"[bold]{data.get('name', '?')}[/]")
    table.add_row("joints", f"{data.get('n', 0)}  [dim]{' '.join(k[0].upper() for k in kinds)}[/dim]")
    table.add_row("mass", f"{data.get('total_mass', 0.0):.4g} kg")
    table.add_row("gravity", f"({g}) m/s²")
    console.print(table)


def display_idyn_summary(data: dict[str, Any]) -> None:
    wall = data.get("wall_time_s", {})
    header = (
        f"[bold]{data.get('model')}[/] · n={data.get('n')} · order {data.get('order')}\n"
        f"{data.get('samples')} samples → [cyan]{data.get('output')}[/]"
    )
    if data.get("gnuplot"):
        header += f"\n[dim]plot script {data['gnuplot']}[/dim]"
    header += (
        f"\n[dim]per sample: min {_seconds(wall.get('min', 0.0))} · "
        f"mean {_seconds(wall.get('mean', 0.0))} · max {_seconds(wall.get('max', 0.0))}[/dim]"
    )
    console.print(Panel(Text.from_markup(header), title="[bold]idyn[/]", border_style="cyan"))


def display_check_report(data: dict[str, Any]) -> None:
    """Suite table; failing rows in red, panel border follows the verdict."""
    results = data.get("results", [])
    clean = data.get("clean", True)

    table = Table(show_header=True, border_style="green" if clean else "red")
    table.add_column("Suite")
    table.add_column("Worst", justify="right")
    table.add_column("Tolerance", justify="right", style="dim")
    table.add_column("n", justify="right", style="dim")
    table.add_column("")
    for r in results:
        ok = r.get("passed", False)
        table.add_row(
            r.get("name", ""),
            f"{r.get('worst', 0.0):.3e}",
            f"{r.get('tolerance', 0.0):.0e}",
            str(r.get("samples", 0)),
            "[green]✓[/]" if ok else "[red]✗[/]",
        )

    failed = sum(1 for r in results if not r.get("passed", False))
    title = (
        f"[bold]check[/] · {data.get('model')} · [green]all {len(results)} suites pass[/]"
        if clean
        else f"[bold]check[/] · {data.get('model')} · [red]{failed} of {len(results)} failing[/]"
    )
    console.print(Panel(table, title=title, border_style="green" if clean else "red"))


def display_bench_report(data: dict[str, Any]) -> None:
    mean = data.get("mean_s", 0.0)
    ref = data.get("reference_s", 0.0)
    body = (
        f"[bold]{data.get('model')}[/] · n={data.get('n')} · order {data.get('order')} · "
        f"{data.get('reps')} reps\n"
        f"mean [bold]{_seconds(mean)}[/] · median {_seconds(data.get('median_s', 0.0))} · "
        f"min {_seconds(data.get('min_s', 0.0))} · max {_seconds(data.get('max_s', 0.0))}"
    )
    speedup = data.get("speedup")
    if ref and speedup:
        verdict = "[green]within[/]" if mean <= ref else "[yellow]above[/]"
        body += f"\n[dim]{verdict} the {_seconds(ref)} MATLAB reference ({speedup:.1f}×)[/dim]"
    body += f"\n[dim]checksum {data.get('checksum', 0.0):.17g}[/dim]"
    console.print(Panel(Text.from_markup(body), title="[bold]bench[/]", border_style="cyan"))
