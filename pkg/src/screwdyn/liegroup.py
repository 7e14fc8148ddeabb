"""Rigid-motion group primitives: poses, joint screws, twists, wrenches.

Conventions used throughout the package:

* screw coordinates, twists and ``ad``/``Ad`` matrices are ordered
  (rotational, translational): ``X = (ξ, η)``, ``V = (ω, v)``, ``W = (τ, f)``;
* a :class:`Pose` ``C`` maps coordinates in its own frame to the frame it is
  expressed in, ``p ↦ R p + r``;
* ``adjoint(C)`` transforms screw coordinates from the frame of ``C`` into the
  frame ``C`` is expressed in.

Everything here is a pure function over immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from screwdyn.errors import AxisNormError
from screwdyn.models.enums import JointKind

__all__ = [
    "AXIS_TOLERANCE",
    "JointScrew",
    "Pose",
    "Twist",
    "Wrench",
    "ad",
    "adjoint",
    "adjoint_inverse",
    "pose_compose",
    "pose_inverse",
    "rot_exp",
    "screw_exp",
    "skew",
]

Vector = NDArray[np.float64]
Matrix = NDArray[np.float64]

# Axes are accepted as unit vectors up to this much drift, and rejected beyond
# it rather than silently renormalised.
AXIS_TOLERANCE = 1e-9
# Orthonormality of stored rotations (Frobenius norm of RᵀR − I, |det R − 1|).
ROTATION_TOLERANCE = 1e-12

_I3 = np.eye(3)


def _vec3(v: object) -> Vector:
    out = np.asarray(v, dtype=np.float64).reshape(3)
    return out


def skew(v: Vector) -> Matrix:
    """The matrix ``ṽ`` with ``ṽ w = v × w``."""
    x, y, z = float(v[0]), float(v[1]), float(v[2])
    return np.array(
        [
            [0.0, -z, y],
            [z, 0.0, -x],
            [-y, x, 0.0],
        ]
    )


def _check_unit(e: Vector, tolerance: float = AXIS_TOLERANCE) -> None:
    norm = float(np.linalg.norm(e))
    if abs(norm - 1.0) > tolerance:
        raise AxisNormError(norm, tolerance)


def rot_exp(e: Vector, phi: float) -> Matrix:
    """Euler-Rodrigues: ``exp(φẽ) = I + sinφ ẽ + (1 − cosφ) ẽ²`` for unit ``e``."""
    e = _vec3(e)
    _check_unit(e)
    E = skew(e)
    return _I3 + np.sin(phi) * E + (1.0 - np.cos(phi)) * (E @ E)


# --------------------------------------------------------------------------- #
# Value types
# --------------------------------------------------------------------------- #
@dataclass(frozen=True, slots=True)
class Pose:
    """An element of SE(3): rotation ``R`` and translation ``r`` (m)."""

    R: Matrix = field(default_factory=lambda: np.eye(3))
    r: Vector = field(default_factory=lambda: np.zeros(3))

    @staticmethod
    def identity() -> Pose:
        return Pose(np.eye(3), np.zeros(3))

    @staticmethod
    def from_translation(r: Vector) -> Pose:
        return Pose(np.eye(3), _vec3(r))

    def homogeneous(self) -> Matrix:
        """4×4 homogeneous matrix ``[[R, r], [0, 1]]``."""
        T = np.eye(4)
        T[:3, :3] = self.R
        T[:3, 3] = self.r
        return T

    def orthonormality_error(self) -> float:
        """max(‖RᵀR − I‖_F, |det R − 1|); zero for an exact rotation."""
        return max(
            float(np.linalg.norm(self.R.T @ self.R - _I3)),
            abs(float(np.linalg.det(self.R)) - 1.0),
        )

    def is_valid(self, tolerance: float = ROTATION_TOLERANCE) -> bool:
        return bool(np.all(np.isfinite(self.r))) and self.orthonormality_error() <= tolerance

    def transform_point(self, p: Vector) -> Vector:
        return self.R @ _vec3(p) + self.r


@dataclass(frozen=True, slots=True)
class JointScrew:
    """Body-fixed screw coordinates ``X = (ξ, η)`` of a 1-DOF joint.

    ``pitch`` is meaningful for helical joints only; revolute joints carry 0
    and prismatic joints ``None`` (the infinite-pitch branch is chosen by
    ``kind``, never by testing the number).
    """

    xi: Vector
    eta: Vector
    kind: JointKind = JointKind.REVOLUTE
    pitch: float | None = 0.0

    def __post_init__(self) -> None:
        if self.kind is JointKind.PRISMATIC:
            if float(np.linalg.norm(self.xi)) > AXIS_TOLERANCE:
                raise AxisNormError(float(np.linalg.norm(self.xi)), 0.0)
            _check_unit(self.eta)
        else:
            _check_unit(self.xi)

    @property
    def vector(self) -> Vector:
        """The stacked 6-vector ``(ξ, η)``."""
        return np.concatenate([self.xi, self.eta])

    @property
    def axis(self) -> Vector:
        """Unit direction ``e`` of the joint axis."""
        return self.eta if self.kind is JointKind.PRISMATIC else self.xi

    @property
    def point(self) -> Vector:
        """The point on the axis closest to the frame origin.

        Recovered from ``η = x × e + h e``: with ``x ⟂ e``, ``x = e × (η − h e)``.
        """
        if self.kind is JointKind.PRISMATIC:
            return np.zeros(3)
        h = self.pitch or 0.0
        return np.cross(self.xi, self.eta - h * self.xi)

    @staticmethod
    def from_vector(X: Vector, kind: JointKind = JointKind.REVOLUTE, pitch: float | None = 0.0) -> JointScrew:
        X = np.asarray(X, dtype=np.float64).reshape(6)
        return JointScrew(X[:3].copy(), X[3:].copy(), kind, pitch)


@dataclass(frozen=True, slots=True)
class Twist:
    """Body twist ``(ω, v)``: angular (rad/s) and linear (m/s) velocity."""

    omega: Vector
    v: Vector

    @property
    def vector(self) -> Vector:
        return np.concatenate([self.omega, self.v])

    @staticmethod
    def from_vector(V: Vector) -> Twist:
        V = np.asarray(V, dtype=np.float64).reshape(6)
        return Twist(V[:3].copy(), V[3:].copy())


@dataclass(frozen=True, slots=True)
class Wrench:
    """Wrench ``(τ, f)``: torque (N·m) and force (N)."""

    tau: Vector
    f: Vector

    @property
    def vector(self) -> Vector:
        return np.concatenate([self.tau, self.f])

    @staticmethod
    def zero() -> Wrench:
        return Wrench(np.zeros(3), np.zeros(3))

    @staticmethod
    def from_vector(W: Vector) -> Wrench:
        W = np.asarray(W, dtype=np.float64).reshape(6)
        return Wrench(W[:3].copy(), W[3:].copy())


# --------------------------------------------------------------------------- #
# Group operations
# --------------------------------------------------------------------------- #
def pose_compose(C1: Pose, C2: Pose) -> Pose:
    """``C1 ∘ C2``."""
    return Pose(C1.R @ C2.R, C1.R @ C2.r + C1.r)


def pose_inverse(C: Pose) -> Pose:
    Rt = C.R.T
    return Pose(Rt, -(Rt @ C.r))


def screw_exp(X: JointScrew, phi: float) -> Pose:
    """Closed-form ``exp(φX)`` for a joint screw.

    Finite pitch: ``(exp(φẽ), (I − exp(φẽ)) x + φ h e)``; prismatic: ``(I, φe)``.
    """
    if X.kind is JointKind.PRISMATIC:
        return Pose(np.eye(3), phi * X.eta)
    R = rot_exp(X.xi, phi)
    h = X.pitch or 0.0
    return Pose(R, (_I3 - R) @ X.point + phi * h * X.xi)


def adjoint(C: Pose) -> Matrix:
    """``Ad_C = [[R, 0], [r̃R, R]]``."""
    out = np.zeros((6, 6))
    out[:3, :3] = C.R
    out[3:, 3:] = C.R
    out[3:, :3] = skew(C.r) @ C.R
    return out


def adjoint_inverse(C: Pose) -> Matrix:
    """``Ad_C⁻¹ = Ad_{C⁻¹} = [[Rᵀ, 0], [−Rᵀr̃, Rᵀ]]`` without a matrix inverse."""
    Rt = C.R.T
    out = np.zeros((6, 6))
    out[:3, :3] = Rt
    out[3:, 3:] = Rt
    out[3:, :3] = -Rt @ skew(C.r)
    return out


def ad(X: Vector) -> Matrix:
    """``ad_X = [[ξ̃, 0], [η̃, ξ̃]]``, the Lie bracket with ``X``."""
    X = np.asarray(X, dtype=np.float64).reshape(6)
    xi = skew(X[:3])
    out = np.zeros((6, 6))
    out[:3, :3] = xi
    out[3:, 3:] = xi
    out[3:, :3] = skew(X[3:])
    return out
