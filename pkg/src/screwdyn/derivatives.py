"""First and second time derivatives of the equations of motion in closed form.

Differentiating ``Q = M q̈ + C q̇ + Q_grav + Q_ext`` gives

    Q̇ = M q⃛ + (Ṁ + C) q̈ + Ċ q̇ + Q̇_grav + Q̇_ext
    Q̈ = M q⁗ + (2Ṁ + C) q⃛ + (M̈ + 2Ċ) q̈ + C̈ q̇ + Q̈_grav + Q̈_ext

with ``Ṁ = Jᵀ 𝖬⁽¹⁾ J``, ``M̈ = Jᵀ 𝖬⁽²⁾ J``, ``Ċ = Jᵀ 𝖢⁽¹⁾ J`` and
``C̈ = Jᵀ 𝖢⁽²⁾ J``. Every system-level matrix follows from ``J̇ = −A a J`` and
``Ȧ = A a − A a A``, so all of them are polynomials in ``𝖬, A, a, ȧ, ä, b, ḃ, b̈``.

Two algebraic arrangements exist for ``𝖢⁽¹⁾``, ``𝖬⁽²⁾`` and ``𝖢⁽²⁾``. The
production path reuses the lower-order result. The
expanded ``*_explicit`` forms are kept for cross-checking only.

``a`` and ``ȧ`` commute (block ``i`` of each is a multiple of ``ad X_i``), so
``2 𝖬Aaȧ + 𝖬Aȧa`` and ``3 𝖬Aaȧ`` are the same matrix. The production
``𝖢̈`` keeps the ordering produced by differentiation,
:func:`coriolis_ddot_explicit` uses the merged one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from screwdyn.chain import ChainModel, ExternalWrenchTrajectory
from screwdyn.dynamics import (
    GeneralizedForces,
    JointSpaceMatrices,
    inverse_dynamics_from_workspace,
    joint_space_matrices,
)
from screwdyn.kinematics import MotionState, SystemWorkspace, evaluate_workspace
from screwdyn.liegroup import Matrix, Vector

__all__ = [
    "FirstOrderBundle",
    "HigherOrderForces",
    "SecondOrderBundle",
    "SharedProducts",
    "coriolis1_dot_expanded",
    "coriolis1_explicit",
    "coriolis2_explicit",
    "coriolis_ddot_explicit",
    "first_order_forces",
    "first_order_matrices",
    "higher_order_inverse_dynamics",
    "mass2_explicit",
    "second_order_forces",
    "second_order_matrices",
    "shared_products",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SharedProducts:
    """Products reused by every derivative formula of one state."""

    Aa: Matrix
    MAa: Matrix
    bTM: Matrix
    AaAa: Matrix
    Aaa: Matrix
    MAaAa: Matrix
    MAaa: Matrix
    Aadot: Matrix
    MAadot: Matrix
    aTAT: Matrix


@dataclass(frozen=True, slots=True)
class FirstOrderBundle:
    M1sys: Matrix
    Mdot: Matrix
    Csysdot: Matrix
    C1sys: Matrix
    Cdot: Matrix
    Qgravdot: Vector | None = None
    Qextdot: Vector | None = None
    Qdot: Vector | None = None


@dataclass(frozen=True, slots=True)
class SecondOrderBundle:
    M2sys: Matrix
    Mddot: Matrix
    Csysddot: Matrix
    C1sysdot: Matrix
    C2sys: Matrix
    Cddot: Matrix
    Qgravddot: Vector | None = None
    Qextddot: Vector | None = None
    Qddot: Vector | None = None


@dataclass(frozen=True, slots=True)
class HigherOrderForces:
    """``Q`` and, depending on the requested order, ``Q̇`` and ``Q̈``."""

    forces: GeneralizedForces
    Qdot: Vector | None = None
    Qddot: Vector | None = None
    matrices: JointSpaceMatrices | None = None
    first: FirstOrderBundle | None = None
    second: SecondOrderBundle | None = None

    @property
    def Q(self) -> Vector:
        return self.forces.Q

    @property
    def order(self) -> int:
        return 2 if self.Qddot is not None else 1 if self.Qdot is not None else 0


def _get(value: Matrix | None, name: str) -> Matrix:
    if value is None:
        raise RuntimeError(f"workspace has no {name}; evaluate the kinematics to the needed order first")
    return value


def shared_products(
    model: ChainModel, ws: SystemWorkspace, mats: JointSpaceMatrices | None = None
) -> SharedProducts:
    M = model.Msys
    a = _get(ws.a, "a")
    b = _get(ws.b, "b")
    adot = _get(ws.adot, "adot")
    Aa = ws.A @ a
    MAa = M @ Aa if mats is None else mats.MAa
    AaAa = Aa @ Aa
    Aaa = Aa @ a
    Aadot = ws.A @ adot
    return SharedProducts(
        Aa=Aa,
        MAa=MAa,
        bTM=b.T @ M if mats is None else mats.bTM,
        AaAa=AaAa,
        Aaa=Aaa,
        MAaAa=M @ AaAa,
        MAaa=M @ Aaa,
        Aadot=Aadot,
        MAadot=M @ Aadot,
        aTAT=Aa.T,
    )


# --------------------------------------------------------------------------- #
# First order
# --------------------------------------------------------------------------- #
def _coriolis1_reuse(C: Matrix, Csysdot: Matrix, s: SharedProducts) -> Matrix:
    """``𝖢⁽¹⁾ = 𝖢̇ − 𝖢Aa − aᵀAᵀ𝖢``."""
    return Csysdot - C @ s.Aa - s.aTAT @ C


def coriolis1_explicit(model: ChainModel, ws: SystemWorkspace, s: SharedProducts) -> Matrix:
    """``𝖢⁽¹⁾`` written out without reusing ``𝖢``."""
    M = model.Msys
    bdot = _get(ws.bdot, "bdot")
    b = _get(ws.b, "b")
    return (
        -s.MAadot
        - bdot.T @ M
        + b.T @ s.MAa
        + s.aTAT @ s.bTM
        + s.aTAT @ s.MAa
        + 2.0 * s.MAaAa
        - s.MAaa
    )


def first_order_matrices(
    model: ChainModel, ws: SystemWorkspace, mats: JointSpaceMatrices, s: SharedProducts
) -> FirstOrderBundle:
    """``𝖬⁽¹⁾``, ``Ṁ``, ``𝖢̇``, ``𝖢⁽¹⁾`` and ``Ċ`` (needs ``ȧ`` and ``ḃ``)."""
    M = model.Msys
    bdot = _get(ws.bdot, "bdot")
    M1 = -s.MAa - s.MAa.T
    # 𝖢(ȧ, ḃ) + 𝖬AaAa − 𝖬Aaa
    Csysdot = -s.MAadot - bdot.T @ M + s.MAaAa - s.MAaa
    C1 = _coriolis1_reuse(mats.Csys, Csysdot, s)
    JT = ws.J.T
    return FirstOrderBundle(
        M1sys=M1,
        Mdot=JT @ M1 @ ws.J,
        Csysdot=Csysdot,
        C1sys=C1,
        Cdot=JT @ C1 @ ws.J,
    )


def first_order_forces(
    model: ChainModel,
    ws: SystemWorkspace,
    state: MotionState,
    mats: JointSpaceMatrices,
    first: FirstOrderBundle,
    s: SharedProducts,
    W: Vector | None = None,
    Wdot: Vector | None = None,
) -> FirstOrderBundle:
    """``Q̇ = M q⃛ + (Ṁ + C) q̈ + Ċ q̇ + Q̇_grav + Q̇_ext``."""
    qd, qdd, qddd = (state.derivative(k, 1) for k in (1, 2, 3))
    JT = ws.J.T
    Qgravdot = JT @ (first.M1sys @ (ws.U @ model.G))
    if W is None and Wdot is None:
        Qextdot = np.zeros(ws.n)
    else:
        W = np.zeros(6 * ws.n) if W is None else W
        Wdot = np.zeros(6 * ws.n) if Wdot is None else Wdot
        Qextdot = JT @ (Wdot - s.aTAT @ W)
    Qdot = (
        mats.M @ qddd
        + (first.Mdot + mats.C) @ qdd
        + first.Cdot @ qd
        + Qgravdot
        + Qextdot
    )
    return replace(first, Qgravdot=Qgravdot, Qextdot=Qextdot, Qdot=Qdot)


# --------------------------------------------------------------------------- #
# Second order
# --------------------------------------------------------------------------- #
def mass2_explicit(model: ChainModel, ws: SystemWorkspace, s: SharedProducts) -> Matrix:
    """``𝖬⁽²⁾`` without reusing ``𝖬⁽¹⁾``."""
    aTATMAa = s.aTAT @ s.MAa
    return (
        -s.MAadot
        - s.MAadot.T
        + 2.0 * s.MAaAa
        + 2.0 * s.MAaAa.T
        + 2.0 * aTATMAa
        - s.MAaa
        - s.MAaa.T
    )


def _csys_ddot(model: ChainModel, ws: SystemWorkspace, s: SharedProducts) -> Matrix:
    M = model.Msys
    a = _get(ws.a, "a")
    adot = _get(ws.adot, "adot")
    addot = _get(ws.addot, "addot")
    bddot = _get(ws.bddot, "bddot")
    MAa = s.MAa
    return (
        -M @ ws.A @ addot
        - bddot.T @ M
        + s.MAadot @ s.Aa
        + 2.0 * MAa @ s.Aadot
        - 2.0 * s.MAaAa @ s.Aa
        + 2.0 * s.MAaAa @ a
        - 2.0 * MAa @ adot
        - s.MAadot @ a
        - s.MAaa @ a
        + s.MAaa @ s.Aa
    )


def coriolis_ddot_explicit(model: ChainModel, ws: SystemWorkspace, s: SharedProducts) -> Matrix:
    """``𝖢̈`` with the ``a ȧ`` terms merged into ``−3 𝖬Aaȧ``."""
    M = model.Msys
    a = _get(ws.a, "a")
    adot = _get(ws.adot, "adot")
    addot = _get(ws.addot, "addot")
    bddot = _get(ws.bddot, "bddot")
    return (
        -M @ ws.A @ addot
        - bddot.T @ M
        + s.MAadot @ s.Aa
        + 2.0 * s.MAa @ s.Aadot
        - 2.0 * s.MAaAa @ s.Aa
        + 2.0 * s.MAaAa @ a
        - 3.0 * s.MAa @ adot
        - s.MAaa @ a
        + s.MAaa @ s.Aa
    )


def coriolis1_dot_expanded(
    model: ChainModel,
    ws: SystemWorkspace,
    mats: JointSpaceMatrices,
    first: FirstOrderBundle,
    Csysddot: Matrix,
    s: SharedProducts,
) -> Matrix:
    """``𝖢̇⁽¹⁾`` written in terms of ``𝖢̇`` instead of ``𝖢⁽¹⁾``."""
    a = _get(ws.a, "a")
    C = mats.Csys
    Cd = first.Csysdot
    aT = a.T
    AadotT = s.Aadot.T
    return (
        Csysddot
        - Cd @ s.Aa
        - s.aTAT @ Cd
        - C @ s.Aadot
        - AadotT @ C
        + C @ s.AaAa
        + s.aTAT @ s.aTAT @ C
        - C @ s.Aaa
        - aT @ s.aTAT @ C
    )


def _coriolis1_dot(
    ws: SystemWorkspace,
    mats: JointSpaceMatrices,
    first: FirstOrderBundle,
    Csysddot: Matrix,
    s: SharedProducts,
) -> Matrix:
    a = _get(ws.a, "a")
    C = mats.Csys
    C1 = first.C1sys
    aTATC = s.aTAT @ C
    return (
        Csysddot
        - (C1 + aTATC) @ s.Aa
        - s.aTAT @ (C1 + C @ s.Aa)
        - C @ s.Aadot
        - s.Aadot.T @ C
        - C @ s.Aaa
        - a.T @ aTATC
    )


def coriolis2_explicit(
    model: ChainModel, ws: SystemWorkspace, mats: JointSpaceMatrices, s: SharedProducts
) -> Matrix:
    """``𝖢⁽²⁾`` as one expansion in ``𝖬``, ``𝖢`` and the motion operators."""
    M = model.Msys
    A = ws.A
    a = _get(ws.a, "a")
    adot = _get(ws.adot, "adot")
    addot = _get(ws.addot, "addot")
    bdot = _get(ws.bdot, "bdot")
    bddot = _get(ws.bddot, "bddot")
    C = mats.Csys
    aTAT = s.aTAT
    bdTM = bdot.T @ M
    return (
        -M @ A @ addot
        - bddot.T @ M
        + 2.0 * bdTM @ s.Aa
        + 2.0 * aTAT @ bdTM
        + 3.0 * s.MAadot @ s.Aa
        + 2.0 * s.MAa @ s.Aadot
        + 2.0 * aTAT @ s.MAadot
        - C @ s.Aadot
        - s.Aadot.T @ C
        + 2.0 * C @ s.AaAa
        + 2.0 * aTAT @ C @ s.Aa
        + 2.0 * aTAT @ aTAT @ C
        - 4.0 * s.MAaAa @ s.Aa
        - 2.0 * aTAT @ s.MAaAa
        + 2.0 * s.MAaa @ s.Aa
        + 2.0 * aTAT @ s.MAaa
        + 2.0 * s.MAaAa @ a
        - 3.0 * s.MAa @ adot
        - s.MAaa @ a
        + s.MAaa @ s.Aa
        - C @ s.Aaa
        - a.T @ aTAT @ C
    )


def second_order_matrices(
    model: ChainModel,
    ws: SystemWorkspace,
    mats: JointSpaceMatrices,
    first: FirstOrderBundle,
    s: SharedProducts,
) -> SecondOrderBundle:
    """``𝖬⁽²⁾``, ``M̈``, ``𝖢̈``, ``𝖢̇⁽¹⁾``, ``𝖢⁽²⁾`` and ``C̈`` (needs ``ä`` and ``b̈``)."""
    M1 = first.M1sys
    M1dot = (
        -s.MAadot
        - s.MAadot.T
        - s.MAaa
        + s.MAaAa
        - s.MAaa.T
        + s.MAaAa.T
    )
    M2 = M1dot - M1 @ s.Aa - s.aTAT @ M1
    Csysddot = _csys_ddot(model, ws, s)
    C1dot = _coriolis1_dot(ws, mats, first, Csysddot, s)
    C2 = C1dot - first.C1sys @ s.Aa - s.aTAT @ first.C1sys
    JT = ws.J.T
    return SecondOrderBundle(
        M2sys=M2,
        Mddot=JT @ M2 @ ws.J,
        Csysddot=Csysddot,
        C1sysdot=C1dot,
        C2sys=C2,
        Cddot=JT @ C2 @ ws.J,
    )


def second_order_forces(
    model: ChainModel,
    ws: SystemWorkspace,
    state: MotionState,
    mats: JointSpaceMatrices,
    first: FirstOrderBundle,
    second: SecondOrderBundle,
    s: SharedProducts,
    W: Vector | None = None,
    Wdot: Vector | None = None,
    Wddot: Vector | None = None,
) -> SecondOrderBundle:
    """``Q̈ = M q⁗ + (2Ṁ + C) q⃛ + (M̈ + 2Ċ) q̈ + C̈ q̇ + Q̈_grav + Q̈_ext``."""
    qd, qdd, qddd, qdddd = (state.derivative(k, 2) for k in (1, 2, 3, 4))
    JT = ws.J.T
    Qgravddot = JT @ (second.M2sys @ (ws.U @ model.G))
    if W is None and Wdot is None and Wddot is None:
        Qextddot = np.zeros(ws.n)
    else:
        zero = np.zeros(6 * ws.n)
        W = zero if W is None else W
        Wdot = zero if Wdot is None else Wdot
        Wddot = zero if Wddot is None else Wddot
        Qextddot = JT @ (
            Wddot
            - 2.0 * (s.aTAT @ Wdot)
            + (2.0 * s.AaAa.T - s.Aadot.T - s.Aaa.T) @ W
        )
    Qddot = (
        mats.M @ qdddd
        + (2.0 * first.Mdot + mats.C) @ qddd
        + (second.Mddot + 2.0 * first.Cdot) @ qdd
        + second.Cddot @ qd
        + Qgravddot
        + Qextddot
    )
    return replace(second, Qgravddot=Qgravddot, Qextddot=Qextddot, Qddot=Qddot)


# --------------------------------------------------------------------------- #
# Entry point
# --------------------------------------------------------------------------- #
def higher_order_inverse_dynamics(
    model: ChainModel,
    state: MotionState,
    order: int = 2,
    wrench: ExternalWrenchTrajectory | None = None,
    t: float = 0.0,
) -> HigherOrderForces:
    """``Q`` plus ``Q̇`` (order ≥ 1) and ``Q̈`` (order 2) for one state.

    Stages run kinematics, zeroth, first and second order in that sequence and
    stop at ``order``.

    Raises:
        MissingDerivativeError: ``state`` lacks a derivative the order needs.
        ValueError: ``order`` outside 0..2.
    """
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    state.require(order + 3, order)
    W = Wdot = Wddot = None
    if wrench is not None:
        W, Wdot, Wddot = wrench.evaluate(t)

    ws = evaluate_workspace(model, state, order)
    mats = joint_space_matrices(model, ws)
    forces = inverse_dynamics_from_workspace(model, ws, state, mats, W)
    if order == 0:
        return HigherOrderForces(forces=forces, matrices=mats)

    s = shared_products(model, ws, mats)
    first = first_order_matrices(model, ws, mats, s)
    first = first_order_forces(model, ws, state, mats, first, s, W, Wdot)
    if order == 1:
        return HigherOrderForces(forces=forces, Qdot=first.Qdot, matrices=mats, first=first)

    second = second_order_matrices(model, ws, mats, first, s)
    second = second_order_forces(model, ws, state, mats, first, second, s, W, Wdot, Wddot)
    return HigherOrderForces(
        forces=forces,
        Qdot=first.Qdot,
        Qddot=second.Qddot,
        matrices=mats,
        first=first,
        second=second,
    )
