"""Zeroth-order equations of motion in closed form.

``Q = M q̈ + C q̇ + Q_grav + Q_ext`` with

* ``M = Jᵀ 𝖬 J``
* ``C = Jᵀ 𝖢 J``, ``𝖢 = −𝖬 A a − bᵀ 𝖬``
* ``Q_grav = Jᵀ 𝖬 U G``, ``G = −(0, ⁰g)``
* ``Q_ext = Jᵀ W`` for the stacked body-frame wrench ``W``.

``C̄ = −Jᵀ(𝖬 A a + bᵀ 𝖬 − 𝖬 b) J`` is the arrangement for which
``Ṁ − 2 C̄`` is skew-symmetric. Since ``b V = 0`` it produces the same
``C q̇``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from screwdyn.chain import ChainModel
from screwdyn.errors import DimensionError
from screwdyn.kinematics import MotionState, SystemWorkspace, evaluate_workspace
from screwdyn.liegroup import Matrix, Vector

__all__ = [
    "GeneralizedForces",
    "JointSpaceMatrices",
    "com_positions",
    "generalized_external",
    "generalized_gravity",
    "inverse_dynamics",
    "inverse_dynamics_from_workspace",
    "is_positive_definite",
    "joint_space_matrices",
    "kinetic_energy",
    "potential_energy",
]

logger = logging.getLogger(__name__)

PD_TOLERANCE = 1e-10


@dataclass(frozen=True, slots=True)
class JointSpaceMatrices:
    M: Matrix
    C: Matrix
    Cbar: Matrix
    Msys: Matrix
    Csys: Matrix
    MAa: Matrix
    bTM: Matrix


@dataclass(frozen=True, slots=True)
class GeneralizedForces:
    """Joint forces (N·m for revolute, N for prismatic) and their parts."""

    Q: Vector
    Qgrav: Vector
    Qext: Vector


def _a_b(ws: SystemWorkspace) -> tuple[Matrix, Matrix]:
    if ws.a is None or ws.b is None:
        raise RuntimeError("workspace has no velocity terms; call system_velocity first")
    return ws.a, ws.b


def joint_space_matrices(model: ChainModel, ws: SystemWorkspace) -> JointSpaceMatrices:
    Msys = model.Msys
    a, b = _a_b(ws)
    MAa = Msys @ ws.A @ a
    bTM = b.T @ Msys
    Csys = -MAa - bTM
    JT = ws.J.T
    return JointSpaceMatrices(
        M=JT @ Msys @ ws.J,
        C=JT @ Csys @ ws.J,
        Cbar=-JT @ (MAa + bTM - Msys @ b) @ ws.J,
        Msys=Msys,
        Csys=Csys,
        MAa=MAa,
        bTM=bTM,
    )


def generalized_gravity(model: ChainModel, ws: SystemWorkspace) -> Vector:
    return ws.J.T @ (model.Msys @ (ws.U @ model.G))


def generalized_external(ws: SystemWorkspace, W: Vector | None) -> Vector:
    if W is None:
        return np.zeros(ws.n)
    W = np.asarray(W, dtype=np.float64)
    if W.shape != (6 * ws.n,):
        raise DimensionError(f"stacked wrench must have {6 * ws.n} entries, got shape {W.shape}")
    return ws.J.T @ W


def inverse_dynamics_from_workspace(
    model: ChainModel,
    ws: SystemWorkspace,
    state: MotionState,
    mats: JointSpaceMatrices,
    W: Vector | None = None,
) -> GeneralizedForces:
    Qgrav = generalized_gravity(model, ws)
    Qext = generalized_external(ws, W)
    Q = mats.M @ state.derivative(2) + mats.C @ state.derivative(1) + Qgrav + Qext
    return GeneralizedForces(Q=Q, Qgrav=Qgrav, Qext=Qext)


def inverse_dynamics(model: ChainModel, state: MotionState, W: Vector | None = None) -> GeneralizedForces:
    """``Q = M q̈ + C q̇ + Q_grav + Q_ext`` for one state.

    Raises:
        MissingDerivativeError: ``q̈`` is absent.
    """
    ws = evaluate_workspace(model, state, order=0)
    mats = joint_space_matrices(model, ws)
    return inverse_dynamics_from_workspace(model, ws, state, mats, W)


def com_positions(model: ChainModel, ws: SystemWorkspace) -> list[Vector]:
    """Base-frame COM position of every body."""
    return [C.transform_point(b.c) for C, b in zip(ws.poses, model.bodies, strict=True)]


def kinetic_energy(model: ChainModel, ws: SystemWorkspace) -> float:
    if ws.V is None:
        raise RuntimeError("workspace has no twist; call system_velocity first")
    return 0.5 * float(ws.V @ model.Msys @ ws.V)


def potential_energy(model: ChainModel, ws: SystemWorkspace) -> float:
    """``−Σ m_i ⁰gᵀ ⁰p_i`` with ``p_i`` the COM of body ``i``."""
    g = model.gravity
    return -sum(b.m * float(g @ p) for b, p in zip(model.bodies, com_positions(model, ws), strict=True))


def is_positive_definite(M: Matrix, tol: float = PD_TOLERANCE) -> bool:
    """Smallest eigenvalue of the symmetrised matrix exceeds ``tol``."""
    eig = np.linalg.eigvalsh(0.5 * (M + M.T))
    if float(eig[0]) < 1e3 * tol:
        logger.warning(f"mass matrix is close to singular (smallest eigenvalue {eig[0]:.3g})")
    return bool(eig[0] > tol)
