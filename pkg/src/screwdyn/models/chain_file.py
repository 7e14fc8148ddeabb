"""Model file schema: the JSON document describing a serial chain.

Pure data: parsing and per-field invariants only. :mod:`screwdyn.chain` turns a
validated :class:`ChainFile` into the numeric :class:`~screwdyn.chain.ChainModel`.

All units are SI, angles in radians. Rotation matrices are 9 numbers,
row-major. ``inertia_com`` is the upper triangle of the COM inertia tensor in
the order xx, xy, xz, yy, yz, zz.
"""

from __future__ import annotations

from typing import Annotated

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .enums import JointKind

Vec3 = Annotated[list[float], Field(min_length=3, max_length=3)]
Mat3 = Annotated[list[float], Field(min_length=9, max_length=9)]
Sym3 = Annotated[list[float], Field(min_length=6, max_length=6)]

# Same thresholds as the numeric core; repeated here so the schema has no
# dependency on numpy-side modules.
AXIS_TOLERANCE = 1e-9
ROTATION_TOLERANCE = 1e-12
# Inertia tensors are accepted when the smallest eigenvalue is no lower than
# this fraction of the largest (rounding in published tables).
PSD_TOLERANCE = 1e-12


def _check_rotation(values: list[float]) -> list[float]:
    R = np.asarray(values, dtype=np.float64).reshape(3, 3)
    err = max(
        float(np.linalg.norm(R.T @ R - np.eye(3))),
        abs(float(np.linalg.det(R)) - 1.0),
    )
    if err > ROTATION_TOLERANCE:
        raise ValueError(f"not a rotation matrix (orthonormality error {err:.3g})")
    return values


def inertia_tensor(upper: list[float]) -> np.ndarray:
    """3×3 symmetric tensor from (xx, xy, xz, yy, yz, zz)."""
    xx, xy, xz, yy, yz, zz = upper
    return np.array([[xx, xy, xz], [xy, yy, yz], [xz, yz, zz]], dtype=np.float64)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)


class PoseSpec(_Strict):
    """Reference configuration ``B_i`` of a body relative to its predecessor."""

    R: Mat3 = Field(
        default_factory=lambda: [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
        description="Rotation, row-major",
    )
    r: Vec3 = Field(default_factory=lambda: [0.0, 0.0, 0.0], description="Translation (m)")

    @field_validator("R")
    @classmethod
    def _rotation(cls, v: list[float]) -> list[float]:
        return _check_rotation(v)


class JointSpec(_Strict):
    """One 1-DOF joint: its axis in the body frame and the body's reference pose."""

    kind: JointKind = JointKind.REVOLUTE
    axis: Vec3 = Field(description="Unit direction e of the joint axis, body frame")
    point: Vec3 = Field(
        default_factory=lambda: [0.0, 0.0, 0.0],
        description="Any point x on the axis (m); ignored for prismatic joints",
    )
    pitch: float | None = Field(
        default=None,
        description="Helical pitch h (m/rad); required for helical, absent otherwise",
    )
    B: PoseSpec = Field(default_factory=PoseSpec)

    @field_validator("axis")
    @classmethod
    def _unit_axis(cls, v: list[float]) -> list[float]:
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > AXIS_TOLERANCE:
            raise ValueError(f"axis must be a unit vector (|e| = {norm:.12g})")
        return v

    @model_validator(mode="after")
    def _pitch_matches_kind(self) -> JointSpec:
        if self.kind is JointKind.HELICAL and self.pitch is None:
            raise ValueError("helical joints need a pitch")
        if self.kind is not JointKind.HELICAL and self.pitch is not None:
            raise ValueError(f"{self.kind.value} joints take no pitch")
        return self


class BodySpec(_Strict):
    """Mass properties of one body, in its body-fixed frame."""

    mass: float = Field(gt=0, description="Mass (kg)")
    com: Vec3 = Field(description="COM position in the body frame (m)")
    inertia_com: Sym3 = Field(description="COM inertia xx, xy, xz, yy, yz, zz (kg·m²)")
    R_bc: Mat3 | None = Field(
        default=None,
        description="Rotation of the COM frame into the body frame; identity when absent",
    )

    @field_validator("R_bc")
    @classmethod
    def _rotation(cls, v: list[float] | None) -> list[float] | None:
        return None if v is None else _check_rotation(v)

    @field_validator("inertia_com")
    @classmethod
    def _positive_semidefinite(cls, v: list[float]) -> list[float]:
        eig = np.linalg.eigvalsh(inertia_tensor(v))
        if float(eig[0]) < -PSD_TOLERANCE * max(1.0, float(abs(eig).max())):
            raise ValueError(f"inertia tensor is not positive semidefinite (min eig {eig[0]:.3g})")
        return v


class ChainFile(_Strict):
    """A serial chain: joints and bodies are listed base to tip, one each per index."""

    name: str = Field(min_length=1)
    gravity: Vec3 = Field(description="Gravitational acceleration in the base frame (m/s²)")
    joints: list[JointSpec] = Field(min_length=1)
    bodies: list[BodySpec] = Field(min_length=1)

    @model_validator(mode="after")
    def _same_length(self) -> ChainFile:
        if len(self.joints) != len(self.bodies):
            raise ValueError(
                f"{len(self.joints)} joints but {len(self.bodies)} bodies; need one body per joint"
            )
        return self
