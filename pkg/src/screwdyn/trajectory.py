"""Joint trajectories with exact time derivatives through fourth order.

The analytic test motion is ``q_i(t) = c_i + A_i cos(ω_i t + φ_i)``. Tabulated
motions are read from CSV with columns ``t, q1..qn, qd1..qdn, qdd1..``; higher
derivative groups are optional and only required up to the order asked for.
"""

from __future__ import annotations

import csv
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from screwdyn.errors import ConfigError, DimensionError
from screwdyn.kinematics import DERIVATIVE_NAMES, MotionState
from screwdyn.liegroup import Vector
from screwdyn.models.run_config import CosineTrajectorySpec

__all__ = [
    "CosineTrajectory",
    "cosine_samples",
    "default_frequencies",
    "demo_trajectory",
    "load_trajectory_csv",
    "sample",
    "sample_times",
]

logger = logging.getLogger(__name__)

MAX_ORDER = 4

# d^k/dx^k cos x expressed through cos and sin, k = 0..4
_COS_DERIVATIVES: tuple[Callable[[Vector], Vector], ...] = (
    np.cos,
    lambda x: -np.sin(x),
    lambda x: -np.cos(x),
    np.sin,
    np.cos,
)


@dataclass(frozen=True, slots=True)
class CosineTrajectory:
    """Per-joint offset, amplitude (rad or m), frequency (rad/s) and phase (rad)."""

    c: Vector
    A: Vector
    w: Vector
    phi: Vector

    def __post_init__(self) -> None:
        n = self.c.shape[0]
        for name in ("A", "w", "phi"):
            v = getattr(self, name)
            if v.shape != (n,):
                raise DimensionError(f"{name} has shape {v.shape}, expected ({n},)")
        if not all(np.all(np.isfinite(getattr(self, f))) for f in ("c", "A", "w", "phi")):
            raise DimensionError("trajectory parameters must be finite")

    @property
    def n(self) -> int:
        return int(self.c.shape[0])

    @staticmethod
    def from_spec(spec: CosineTrajectorySpec, n: int) -> CosineTrajectory:
        """Broadcast scalars; ``frequencies=None`` means ``0.6 + 0.1·i``."""

        def per_joint(value: float | list[float], name: str) -> Vector:
            if isinstance(value, list):
                if len(value) != n:
                    raise ConfigError(f"trajectory.{name} has {len(value)} entries, model has {n} joints")
                return np.asarray(value, dtype=np.float64)
            return np.full(n, float(value))

        w = default_frequencies(n) if spec.frequencies is None else per_joint(spec.frequencies, "frequencies")
        return CosineTrajectory(
            c=per_joint(spec.offsets, "offsets"),
            A=per_joint(spec.amplitudes, "amplitudes"),
            w=w,
            phi=per_joint(spec.phases, "phases"),
        )


def default_frequencies(n: int) -> Vector:
    return 0.6 + 0.1 * np.arange(1, n + 1, dtype=np.float64)


def demo_trajectory(n: int) -> CosineTrajectory:
    """``c = 0``, ``A = 0.5``, ``ω_i = 0.6 + 0.1 i``, ``φ = 0``."""
    return CosineTrajectory(
        c=np.zeros(n),
        A=np.full(n, 0.5),
        w=default_frequencies(n),
        phi=np.zeros(n),
    )


def sample(traj: CosineTrajectory, t: float, order: int = MAX_ORDER) -> MotionState:
    """State at time ``t`` with exact derivatives ``1..order``."""
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must be within 0..{MAX_ORDER}, got {order}")
    x = traj.w * t + traj.phi
    values: list[Vector | None] = [traj.c + traj.A * np.cos(x)]
    for k in range(1, MAX_ORDER + 1):
        values.append(traj.A * traj.w**k * _COS_DERIVATIVES[k](x) if k <= order else None)
    return MotionState(*values)  # type: ignore[arg-type]


def sample_times(duration: float, rate: float) -> Vector:
    """``round(duration · rate) + 1`` instants ``t_k = k / rate``."""
    if duration <= 0 or rate <= 0:
        raise ValueError("duration and rate must be positive")
    count = int(round(duration * rate)) + 1
    return np.arange(count, dtype=np.float64) / rate


def _column_names(n: int, derivatives: int) -> list[str]:
    return ["t"] + [f"{DERIVATIVE_NAMES[k]}{i}" for k in range(derivatives) for i in range(1, n + 1)]


def load_trajectory_csv(path: str | Path, n: int, order: int = 2) -> list[tuple[float, MotionState]]:
    """Samples for inverse dynamics of ``order`` (needs ``order + 3`` groups).

    Raises:
        ConfigError: missing columns, non-numeric cells or unsorted times.
    """
    derivatives = order + 3
    needed = _column_names(n, derivatives)
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read trajectory {path}: {e}") from e
    reader = csv.DictReader(text.splitlines())
    header = reader.fieldnames or []
    missing = [c for c in needed if c not in header]
    if missing:
        raise ConfigError(f"{path}: missing columns {', '.join(missing)}")

    samples: list[tuple[float, MotionState]] = []
    last_t = -np.inf
    for row_no, row in enumerate(reader, start=2):
        try:
            t = float(row["t"])
            groups = [
                np.array([float(row[f"{DERIVATIVE_NAMES[k]}{i}"]) for i in range(1, n + 1)])
                for k in range(derivatives)
            ]
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{path}:{row_no}: {e}") from e
        if t <= last_t:
            raise ConfigError(f"{path}:{row_no}: time {t} does not increase")
        last_t = t
        try:
            samples.append((t, MotionState(*groups)))  # type: ignore[arg-type]
        except DimensionError as e:
            raise ConfigError(f"{path}:{row_no}: {e}") from e
    logger.debug(f"Read {len(samples)} samples of order {order} from {path}")
    return samples


def cosine_samples(traj: CosineTrajectory, times: Sequence[float] | Vector) -> list[tuple[float, MotionState]]:
    return [(float(t), sample(traj, float(t))) for t in times]
