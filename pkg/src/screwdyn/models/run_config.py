"""Run configuration: the JSON file behind ``screwdyn idyn --config``.

Relative paths inside the file are resolved against the file's own directory
by :func:`screwdyn.evaluate.load_run_config`, so a config can sit next to the
model it names.
"""

from __future__ import annotations

from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Discriminator, Field, Tag


Vec6 = Annotated[list[float], Field(min_length=6, max_length=6)]
PerJoint = float | list[float]


class CosineTrajectorySpec(BaseModel):
    """``q_i(t) = c_i + A_i cos(ω_i t + φ_i)`` sampled on a uniform grid.

    Scalars broadcast to every joint; lists must have one entry per joint.
    """

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    kind: Literal["cosine"] = "cosine"
    offsets: PerJoint = 0.0
    amplitudes: PerJoint = 0.5
    frequencies: PerJoint | None = Field(
        default=None,
        description="rad/s; default 0.6 + 0.1·i for joint i (1-based)",
    )
    phases: PerJoint = 0.0
    duration: float = Field(default=10.0, gt=0, description="Seconds")
    rate: float = Field(default=1000.0, gt=0, description="Samples per second")


class CsvTrajectorySpec(BaseModel):
    """Tabulated motion: t, q1..qn, qd1..qdn, … as described in the README."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["csv"] = "csv"
    path: Path


def _trajectory_kind(value: Any) -> str:
    """Tag of a trajectory object; a missing ``kind`` means cosine."""
    if isinstance(value, dict):
        return str(value.get("kind", "cosine"))
    return str(getattr(value, "kind", "cosine"))


TrajectorySpec = Annotated[
    Annotated[CosineTrajectorySpec, Tag("cosine")] | Annotated[CsvTrajectorySpec, Tag("csv")],
    Discriminator(_trajectory_kind),
]


class WrenchSpec(BaseModel):
    """External wrench on one body: ``W(t) = offset + amplitude · sin(ωt + φ)``.

    Components are ordered (τx, τy, τz, fx, fy, fz) in the body frame. Every
    other body carries no load.
    """

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    body: int | None = Field(default=None, ge=1, description="1-based; default the last body")
    offset: Vec6 = Field(default_factory=lambda: [0.0] * 6)
    amplitude: Vec6 = Field(default_factory=lambda: [0.0] * 6)
    frequency: float = 0.0
    phase: float = 0.0


class RunConfig(BaseModel):
    """Everything ``idyn``/``bench`` need to run without further flags."""

    model_config = ConfigDict(extra="forbid")

    model: Path
    trajectory: TrajectorySpec = Field(default_factory=CosineTrajectorySpec)
    order: int = Field(default=2, ge=0, le=2)
    output: Path = Path("idyn.csv")
    wrench: WrenchSpec | None = None
    reps: int = Field(default=10000, ge=1)
    seed: int = 0
    workers: int | None = Field(default=None, ge=1)
    gnuplot: bool = False
