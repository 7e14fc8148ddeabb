"""Independent references for the closed-form results.

* central finite differences in time (2nd and 4th order stencils)
* the textbook closed-form inverse dynamics of the planar 2R arm, together
  with its first and second time derivatives
* an energy route to ``Q`` through Lagrange's equations
* body twists recovered from differenced poses

Nothing here calls into :mod:`screwdyn.derivatives`.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from math import cos, sin

import numpy as np
from numpy.typing import ArrayLike

from screwdyn.chain import ChainModel
from screwdyn.config import get_settings
from screwdyn.dynamics import kinetic_energy, potential_energy
from screwdyn.errors import DimensionError
from screwdyn.kinematics import MotionState, assemble_system, forward_kinematics, system_velocity
from screwdyn.liegroup import Vector
from screwdyn.models.enums import FDScheme, JointKind
from screwdyn.trajectory import CosineTrajectory, sample

__all__ = [
    "FDConfig",
    "TwoRParams",
    "TwoRReference",
    "body_twists_from_poses",
    "fd_derivative",
    "lagrangian_forces",
    "relative_error",
    "two_r_params_from_model",
    "two_r_reference",
]

logger = logging.getLogger(__name__)


def relative_error(a: ArrayLike, b: ArrayLike) -> float:
    """``‖a − b‖_F / (1 + ‖b‖_F)``; ``b`` is the reference."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return float(np.linalg.norm(a - b) / (1.0 + np.linalg.norm(b)))


# --------------------------------------------------------------------------- #
# Finite differences
# --------------------------------------------------------------------------- #
@dataclass(frozen=True, slots=True)
class FDConfig:
    step: float = 1e-6
    scheme: FDScheme = FDScheme.CENTRAL_2

    def __post_init__(self) -> None:
        if not self.step > 0:
            raise ValueError(f"finite-difference step must be positive, got {self.step}")


def fd_derivative(f: Callable[[float], ArrayLike], t: float, cfg: FDConfig | None = None) -> Vector:
    """Central difference of ``f`` at ``t``; works for any array-valued ``f``.

    Without ``cfg`` the step and stencil come from the settings.
    """
    if cfg is None:
        settings = get_settings()
        cfg = FDConfig(settings.fd_step, settings.fd_scheme)
    h = cfg.step
    if cfg.scheme is FDScheme.CENTRAL_4:
        return (
            -np.asarray(f(t + 2 * h))
            + 8.0 * np.asarray(f(t + h))
            - 8.0 * np.asarray(f(t - h))
            + np.asarray(f(t - 2 * h))
        ) / (12.0 * h)
    return (np.asarray(f(t + h)) - np.asarray(f(t - h))) / (2.0 * h)


# --------------------------------------------------------------------------- #
# Planar 2R arm
# --------------------------------------------------------------------------- #
@dataclass(frozen=True, slots=True)
class TwoRParams:
    """Link lengths (m), masses (kg) at the link tips, and gravity magnitude (m/s²)."""

    L1: float = 1.0
    L2: float = 1.0
    m1: float = 1.0
    m2: float = 1.0
    g: float = 9.81

    def __post_init__(self) -> None:
        if min(self.L1, self.L2, self.m1, self.m2, self.g) <= 0:
            raise ValueError("2R parameters must all be positive")


@dataclass(frozen=True, slots=True)
class TwoRReference:
    tau: Vector
    taudot: Vector | None = None
    tauddot: Vector | None = None


def _tau(p: TwoRParams, q: Vector, qd: Vector, qdd: Vector) -> Vector:
    L1, L2, m1, m2, g = p.L1, p.L2, p.m1, p.m2, p.g
    q1, q2 = q
    dq1, dq2 = qd
    ddq1, ddq2 = qdd
    s2, c1, c2, c12 = sin(q2), cos(q1), cos(q2), cos(q1 + q2)
    tau1 = (
        L1**2 * ddq1 * m1
        + L1**2 * ddq1 * m2
        + L2**2 * ddq1 * m2
        + L2**2 * ddq2 * m2
        + L2 * g * m2 * c12
        + L1 * g * m1 * c1
        + L1 * g * m2 * c1
        - L1 * L2 * dq2**2 * m2 * s2
        + 2 * L1 * L2 * ddq1 * m2 * c2
        + L1 * L2 * ddq2 * m2 * c2
        - 2 * L1 * L2 * dq1 * dq2 * m2 * s2
    )
    tau2 = L2 * m2 * (
        L1 * s2 * dq1**2
        + L2 * ddq1
        + L2 * ddq2
        + g * c12
        + L1 * ddq1 * c2
    )
    return np.array([tau1, tau2])


def _taudot(p: TwoRParams, q: Vector, qd: Vector, qdd: Vector, qddd: Vector) -> Vector:
    L1, L2, m1, m2, g = p.L1, p.L2, p.m1, p.m2, p.g
    q1, q2 = q
    dq1, dq2 = qd
    ddq1, ddq2 = qdd
    d3q1, d3q2 = qddd
    s1, s2, c2, s12 = sin(q1), sin(q2), cos(q2), sin(q1 + q2)
    tau1 = (
        L1**2 * d3q1 * m1
        + L1**2 * d3q1 * m2
        + L2**2 * d3q1 * m2
        + L2**2 * d3q2 * m2
        - L2 * dq1 * g * m2 * s12
        - L2 * dq2 * g * m2 * s12
        + 2 * L1 * L2 * d3q1 * m2 * c2
        + L1 * L2 * d3q2 * m2 * c2
        - L1 * dq1 * g * m1 * s1
        - L1 * dq1 * g * m2 * s1
        - L1 * L2 * dq2**3 * m2 * c2
        - 4 * L1 * L2 * ddq1 * dq2 * m2 * s2
        - 2 * L1 * L2 * ddq2 * dq1 * m2 * s2
        - 3 * L1 * L2 * ddq2 * dq2 * m2 * s2
        - 2 * L1 * L2 * dq1 * dq2**2 * m2 * c2
    )
    tau2 = L2 * m2 * (
        L2 * d3q1
        + L2 * d3q2
        - dq1 * g * s12
        - dq2 * g * s12
        + L1 * d3q1 * c2
        + 2 * L1 * ddq1 * dq1 * s2
        - L1 * ddq1 * dq2 * s2
        + L1 * dq1**2 * dq2 * c2
    )
    return np.array([tau1, tau2])


def _tauddot(
    p: TwoRParams, q: Vector, qd: Vector, qdd: Vector, qddd: Vector, qdddd: Vector
) -> Vector:
    L1, L2, m1, m2, g = p.L1, p.L2, p.m1, p.m2, p.g
    q1, q2 = q
    dq1, dq2 = qd
    ddq1, ddq2 = qdd
    d3q1, d3q2 = qddd
    d4q1, d4q2 = qdddd
    s1, c1, s2, c2 = sin(q1), cos(q1), sin(q2), cos(q2)
    s12, c12 = sin(q1 + q2), cos(q1 + q2)
    tau1 = (
        L1**2 * d4q1 * m1
        + L1**2 * d4q1 * m2
        + L2**2 * d4q1 * m2
        + L2**2 * d4q2 * m2
        - 3 * L1 * L2 * ddq2**2 * m2 * s2
        + L1 * L2 * dq2**4 * m2 * s2
        - L1 * dq1**2 * g * m1 * c1
        - L1 * dq1**2 * g * m2 * c1
        - L2 * ddq1 * g * m2 * s12
        - L2 * ddq2 * g * m2 * s12
        + 2 * L1 * L2 * d4q1 * m2 * c2
        + L1 * L2 * d4q2 * m2 * c2
        - L1 * ddq1 * g * m1 * s1
        - L1 * ddq1 * g * m2 * s1
        - L2 * dq1**2 * g * m2 * c12
        - L2 * dq2**2 * g * m2 * c12
        - 6 * L1 * L2 * ddq1 * ddq2 * m2 * s2
        - 6 * L1 * L2 * d3q1 * dq2 * m2 * s2
        - 2 * L1 * L2 * d3q2 * dq1 * m2 * s2
        - 4 * L1 * L2 * d3q2 * dq2 * m2 * s2
        - 6 * L1 * L2 * ddq1 * dq2**2 * m2 * c2
        - 6 * L1 * L2 * ddq2 * dq2**2 * m2 * c2
        + 2 * L1 * L2 * dq1 * dq2**3 * m2 * s2
        - 2 * L2 * dq1 * dq2 * g * m2 * c12
        - 6 * L1 * L2 * ddq2 * dq1 * dq2 * m2 * c2
    )
    tau2 = -L2 * m2 * (
        dq1**2 * g * c12
        - L2 * d4q2
        - L2 * d4q1
        + dq2**2 * g * c12
        - 2 * L1 * ddq1**2 * s2
        + ddq1 * g * s12
        + ddq2 * g * s12
        - L1 * d4q1 * c2
        + L1 * dq1**2 * dq2**2 * s2
        + 2 * dq1 * dq2 * g * c12
        + L1 * ddq1 * ddq2 * s2
        - 2 * L1 * d3q1 * dq1 * s2
        + 2 * L1 * d3q1 * dq2 * s2
        + L1 * ddq1 * dq2**2 * c2
        - L1 * ddq2 * dq1**2 * c2
        - 4 * L1 * ddq1 * dq1 * dq2 * c2
    )
    return np.array([tau1, tau2])


def two_r_reference(p: TwoRParams, state: MotionState) -> TwoRReference:
    """``τ`` and, when ``q⃛``/``q⁗`` are present, ``τ̇`` and ``τ̈``.

    Gravity acts along −y of the base frame; both joints rotate about z.
    """
    if state.n != 2:
        raise DimensionError(f"the 2R reference needs n = 2, got {state.n}")
    q, qd, qdd = state.q, state.derivative(1), state.derivative(2)
    tau = _tau(p, q, qd, qdd)
    if state.qddd is None:
        return TwoRReference(tau)
    taudot = _taudot(p, q, qd, qdd, state.qddd)
    if state.qdddd is None:
        return TwoRReference(tau, taudot)
    return TwoRReference(tau, taudot, _tauddot(p, q, qd, qdd, state.qddd, state.qdddd))


def two_r_params_from_model(model: ChainModel) -> TwoRParams | None:
    """Recognise the planar 2R layout and read its parameters; ``None`` otherwise.

    Both joints revolute about z through the body origin, body 2 offset along
    x, COMs on the x axis at the link tips with no own inertia about z, and
    gravity along −y.
    """
    if model.n != 2:
        return None
    z = np.array([0.0, 0.0, 1.0])
    for X in model.screws:
        if X.kind is not JointKind.REVOLUTE or not np.allclose(X.vector, np.r_[z, 0.0, 0.0, 0.0]):
            return None
    B1, B2 = model.B
    if not (np.allclose(B1.R, np.eye(3)) and np.allclose(B1.r, 0.0) and np.allclose(B2.R, np.eye(3))):
        return None
    L1 = float(B2.r[0])
    if not np.allclose(B2.r[1:], 0.0) or L1 <= 0:
        return None
    b1, b2 = model.bodies
    L2 = float(b2.c[0])
    for b, L in ((b1, L1), (b2, L2)):
        if not np.allclose(b.c, [L, 0.0, 0.0]) or abs(b.theta_c[2, 2]) > 0 or not np.allclose(b.R_bc, np.eye(3)):
            return None
    g = -float(model.gravity[1])
    if g <= 0 or not np.allclose(model.gravity[[0, 2]], 0.0):
        return None
    return TwoRParams(L1=L1, L2=L2, m1=b1.m, m2=b2.m, g=g)


# --------------------------------------------------------------------------- #
# Energy and pose oracles
# --------------------------------------------------------------------------- #
def _energies(model: ChainModel, q: Vector, qd: Vector) -> tuple[float, float]:
    ws = assemble_system(model, q)
    system_velocity(ws, qd)
    return kinetic_energy(model, ws), potential_energy(model, ws)


def _gradient(f: Callable[[Vector], float], x: Vector, h: float) -> Vector:
    out = np.zeros_like(x)
    for i in range(x.shape[0]):
        e = np.zeros_like(x)
        e[i] = h
        out[i] = (f(x + e) - f(x - e)) / (2.0 * h)
    return out


def lagrangian_forces(
    model: ChainModel, traj: CosineTrajectory, t: float, h: float = 1e-5, dt: float = 1e-3
) -> Vector:
    """``Q = d/dt(∂T/∂q̇) − ∂(T − V)/∂q`` by central differences, without external load.

    Partials are taken in ``q``/``q̇`` with step ``h``; the time derivative
    follows ``traj`` with a fourth-order stencil of step ``dt``.
    """

    def momentum(tau: float) -> Vector:
        s = sample(traj, tau, 1)
        qd = s.derivative(1)
        return _gradient(lambda v: _energies(model, s.q, v)[0], qd, h)

    s = sample(traj, t, 1)
    qd = s.derivative(1)
    dT_dq = _gradient(lambda x: _energies(model, x, qd)[0], s.q, h)
    dV_dq = _gradient(lambda x: _energies(model, x, qd)[1], s.q, h)
    dp_dt = fd_derivative(momentum, t, FDConfig(dt, FDScheme.CENTRAL_4))
    return dp_dt - dT_dq + dV_dq


def _vee(xi_hat: np.ndarray) -> Vector:
    """(ω, v) from a 4×4 element of se(3)."""
    return np.array([xi_hat[2, 1], xi_hat[0, 2], xi_hat[1, 0], xi_hat[0, 3], xi_hat[1, 3], xi_hat[2, 3]])


def body_twists_from_poses(model: ChainModel, traj: CosineTrajectory, t: float, h: float = 1e-7) -> Vector:
    """Stacked body twists ``V_i ≈ C_i⁻¹ (C_i(t+h) − C_i(t−h)) / 2h``."""

    def poses(tau: float) -> list[np.ndarray]:
        return [C.homogeneous() for C in forward_kinematics(model, sample(traj, tau, 0).q)[0]]

    now, ahead, behind = poses(t), poses(t + h), poses(t - h)
    twists = [
        _vee(np.linalg.inv(C) @ (Cp - Cm) / (2.0 * h)) for C, Cp, Cm in zip(now, ahead, behind, strict=True)
    ]
    return np.concatenate(twists)
