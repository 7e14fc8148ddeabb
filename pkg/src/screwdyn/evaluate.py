"""Evaluate ``Q`` (and ``Q̇``, ``Q̈``) along a trajectory and export the result.

This is the engine behind ``screwdyn idyn``. A run config names a model, a
trajectory and an optional external wrench; :func:`run_idyn` samples the
trajectory, evaluates every sample and writes one CSV row per sample in time
order, whatever order the worker threads finish in.
"""

from __future__ import annotations

import csv
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from screwdyn.chain import ChainModel, ExternalWrenchTrajectory, load_model
from screwdyn.config import get_settings
from screwdyn.derivatives import HigherOrderForces, higher_order_inverse_dynamics
from screwdyn.errors import ConfigError
from screwdyn.kinematics import MotionState
from screwdyn.models.run_config import CosineTrajectorySpec, CsvTrajectorySpec, RunConfig
from screwdyn.trajectory import CosineTrajectory, cosine_samples, load_trajectory_csv, sample_times

__all__ = [
    "Evaluation",
    "IdynSummary",
    "build_samples",
    "build_wrench",
    "evaluate_trajectory",
    "forces_header",
    "load_run_config",
    "run_idyn",
    "write_forces_csv",
    "write_gnuplot_script",
]

logger = logging.getLogger(__name__)

Sample = tuple[float, MotionState]


@dataclass(frozen=True, slots=True)
class Evaluation:
    times: list[float]
    results: list[HigherOrderForces]
    wall_times: list[float]  # seconds per sample

    @property
    def order(self) -> int:
        return self.results[0].order if self.results else 0


@dataclass(frozen=True, slots=True)
class IdynSummary:
    model: str
    n: int
    order: int
    samples: int
    output: Path
    gnuplot: Path | None
    wall_min: float
    wall_mean: float
    wall_max: float

    def to_dict(self) -> dict[str, object]:
        return {
            "model": self.model,
            "n": self.n,
            "order": self.order,
            "samples": self.samples,
            "output": str(self.output),
            "gnuplot": None if self.gnuplot is None else str(self.gnuplot),
            "wall_time_s": {"min": self.wall_min, "mean": self.wall_mean, "max": self.wall_max},
        }


# --------------------------------------------------------------------------- #
# Run config
# --------------------------------------------------------------------------- #
def _resolve(base: Path, p: Path) -> Path:
    return p if p.is_absolute() else (base / p).resolve()


def load_run_config(path: str | Path) -> RunConfig:
    """Parse a run-config JSON file, resolving relative paths against its directory.

    Raises:
        ConfigError: unreadable file or schema violation.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read run config {path}: {e}") from e
    try:
        cfg = RunConfig.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        loc = ".".join(str(part) for part in first["loc"])
        raise ConfigError(f"{path}: {loc}: {first['msg']}") from e

    base = path.parent.resolve()
    trajectory = cfg.trajectory
    if isinstance(trajectory, CsvTrajectorySpec):
        trajectory = trajectory.model_copy(update={"path": _resolve(base, trajectory.path)})
    cfg = cfg.model_copy(
        update={
            "model": _resolve(base, cfg.model),
            "output": _resolve(base, cfg.output),
            "trajectory": trajectory,
        }
    )
    logger.debug(f"Loaded run config {path}: model={cfg.model}, order={cfg.order}")
    return cfg


def build_samples(cfg: RunConfig, n: int) -> list[Sample]:
    spec = cfg.trajectory
    if isinstance(spec, CosineTrajectorySpec):
        traj = CosineTrajectory.from_spec(spec, n)
        return cosine_samples(traj, sample_times(spec.duration, spec.rate))
    return load_trajectory_csv(spec.path, n, cfg.order)


def build_wrench(cfg: RunConfig, n: int) -> ExternalWrenchTrajectory | None:
    if cfg.wrench is None:
        return None
    if cfg.wrench.body is not None and cfg.wrench.body > n:
        raise ConfigError(f"wrench.body is {cfg.wrench.body}, model has {n} bodies")
    return ExternalWrenchTrajectory.from_spec(cfg.wrench, n)


# --------------------------------------------------------------------------- #
# Evaluation
# --------------------------------------------------------------------------- #
def _timed(
    model: ChainModel, item: Sample, order: int, wrench: ExternalWrenchTrajectory | None
) -> tuple[HigherOrderForces, float]:
    t, state = item
    start = time.perf_counter()
    res = higher_order_inverse_dynamics(model, state, order=order, wrench=wrench, t=t)
    return res, time.perf_counter() - start


def evaluate_trajectory(
    model: ChainModel,
    samples: list[Sample],
    order: int = 2,
    wrench: ExternalWrenchTrajectory | None = None,
    workers: int = 1,
) -> Evaluation:
    """Evaluate every sample; results come back in sample order.

    Each call builds its own workspace, so samples are independent and may run
    on a thread pool when ``workers > 1``.
    """
    if workers > 1 and len(samples) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            timed = list(pool.map(lambda item: _timed(model, item, order, wrench), samples))
    else:
        timed = [_timed(model, item, order, wrench) for item in samples]
    logger.debug(f"Evaluated {len(samples)} samples of {model.name} at order {order} ({workers} workers)")
    return Evaluation(
        times=[t for t, _ in samples],
        results=[r for r, _ in timed],
        wall_times=[w for _, w in timed],
    )


# --------------------------------------------------------------------------- #
# Export
# --------------------------------------------------------------------------- #
def forces_header(n: int, order: int) -> list[str]:
    groups = ("Q", "Qd", "Qdd")[: order + 1]
    return ["t"] + [f"{g}{i}" for g in groups for i in range(1, n + 1)]


def write_forces_csv(
    path: str | Path,
    times: list[float],
    results: list[HigherOrderForces],
    order: int,
    digits: int = 17,
) -> Path:
    """``t, Q1..Qn[, Qd1..Qdn][, Qdd1..Qddn]``, comma separated, LF line endings."""
    path = Path(path)
    if len(times) != len(results):
        raise ValueError(f"{len(times)} times but {len(results)} results")
    n = results[0].Q.shape[0] if results else 0

    def fmt(x: float) -> str:
        return f"{x:.{digits}g}"

    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(forces_header(n, order))
        for t, res in zip(times, results, strict=True):
            columns = [res.Q, res.Qdot, res.Qddot][: order + 1]
            if any(c is None for c in columns):
                raise ValueError(f"result at t={t} was evaluated below order {order}")
            row = [fmt(t)] + [fmt(float(x)) for c in columns for x in np.asarray(c)]
            w.writerow(row)
    logger.debug(f"Wrote {len(results)} rows to {path}")
    return path


_GNUPLOT_TITLES = ("Q", "dQ/dt", "d^2Q/dt^2")


def write_gnuplot_script(csv_path: str | Path, n: int, order: int) -> Path:
    """A ``.gp`` file next to the CSV plotting one panel per derivative order."""
    csv_path = Path(csv_path)
    gp = csv_path.with_suffix(".gp")
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set xlabel 't [s]'",
        f"set terminal pngcairo size 1000,{320 * (order + 1)}",
        f"set output '{csv_path.with_suffix('.png').name}'",
        f"set multiplot layout {order + 1},1",
    ]
    for k in range(order + 1):
        first = 2 + k * n
        cols = ", ".join(
            f"'{csv_path.name}' using 1:{c} with lines" if c == first else f"'' using 1:{c} with lines"
            for c in range(first, first + n)
        )
        lines += [f"set ylabel '{_GNUPLOT_TITLES[k]}'", f"plot {cols}"]
    lines.append("unset multiplot")
    gp.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return gp


# --------------------------------------------------------------------------- #
# Driver
# --------------------------------------------------------------------------- #
def run_idyn(
    cfg: RunConfig,
    order: int | None = None,
    output: Path | None = None,
    workers: int | None = None,
) -> IdynSummary:
    """Load, sample, evaluate and write. Arguments override the config.

    Raises:
        ConfigError: the trajectory or wrench does not fit the model.
        ModelValidationError: the model file is invalid.
    """
    settings = get_settings()
    order = cfg.order if order is None else order
    if order not in (0, 1, 2):
        raise ConfigError(f"order must be 0, 1 or 2, got {order}")
    output = cfg.output if output is None else output
    workers = workers or cfg.workers or settings.workers

    model = load_model(cfg.model)
    run = cfg.model_copy(update={"order": order})
    samples = build_samples(run, model.n)
    if not samples:
        raise ConfigError("trajectory has no samples")
    wrench = build_wrench(cfg, model.n)

    ev = evaluate_trajectory(model, samples, order, wrench, workers)
    write_forces_csv(output, ev.times, ev.results, order, settings.float_digits)
    gp = write_gnuplot_script(output, model.n, order) if cfg.gnuplot else None
    walls = np.asarray(ev.wall_times)
    return IdynSummary(
        model=model.name,
        n=model.n,
        order=order,
        samples=len(samples),
        output=output,
        gnuplot=gp,
        wall_min=float(walls.min()),
        wall_mean=float(walls.mean()),
        wall_max=float(walls.max()),
    )
