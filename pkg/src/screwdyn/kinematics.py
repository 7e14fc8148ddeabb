"""Forward kinematics and the stacked system operators.

Everything is expressed in the body-fixed representation. For an n-joint
chain the workspace holds

* ``A`` (6n×6n), block lower-triangular with ``A_ij = Ad_{C_i⁻¹C_j}`` and
  identity diagonal blocks; ``D`` holds only the sub-diagonal blocks so that
  ``A = (I − D)⁻¹``;
* ``X`` (6n×n), block-diagonal joint screws, and ``J = A X``;
* ``a = diag(q̇_i ad X_i)`` and ``b = diag(ad V_i)`` plus their counterparts
  evaluated with higher derivatives (``ȧ`` at q̈, ``ä`` at q⃛, ``ḃ`` at V̇,
  ``b̈`` at V̈);
* ``U`` (6n×6) stacking ``Ad_{C_i}⁻¹``, which carries base-frame quantities
  such as gravity into the bodies.

The evaluation order is fixed: :func:`assemble_system` (poses, A, D, J, U),
then :func:`system_velocity`, :func:`system_acceleration` and
:func:`system_jerk`. Each step only reads what earlier steps wrote.

Jerk of the system twist. Differentiating ``V̇ = J q̈ + J̇ q̇`` once more gives
``V̈ = J q⃛ + 2 J̇ q̈ + J̈ q̇`` where, from ``J̇ = −A a J``,
``J̈ = −Ȧ a J − A ȧ J − A a J̇``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from screwdyn.chain import ChainModel
from screwdyn.errors import DimensionError, MissingDerivativeError
from screwdyn.liegroup import (
    Matrix,
    Pose,
    Twist,
    Vector,
    ad,
    adjoint,
    adjoint_inverse,
    pose_compose,
    pose_inverse,
    screw_exp,
)

__all__ = [
    "MotionState",
    "SystemWorkspace",
    "adot_alternative",
    "assemble_system",
    "body_twist",
    "evaluate_workspace",
    "forward_kinematics",
    "gravity_transform_rate",
    "relative_pose",
    "system_acceleration",
    "system_jacobian_derivative",
    "system_jerk",
    "system_velocity",
]

logger = logging.getLogger(__name__)

# Motion derivatives in order; inverse dynamics of order k needs the first k+3.
DERIVATIVE_NAMES = ("q", "qd", "qdd", "qddd", "qdddd")


@dataclass(frozen=True, slots=True)
class MotionState:
    """Joint coordinates and their time derivatives up to fourth order.

    Orders above what a computation needs may be left as ``None``.
    """

    q: Vector
    qd: Vector | None = None
    qdd: Vector | None = None
    qddd: Vector | None = None
    qdddd: Vector | None = None

    def __post_init__(self) -> None:
        n = np.shape(self.q)[0] if np.ndim(self.q) == 1 else -1
        for name in DERIVATIVE_NAMES:
            v = getattr(self, name)
            if v is None:
                continue
            if np.shape(v) != (n,):
                raise DimensionError(f"{name} must be a vector of length {n}, got shape {np.shape(v)}")
            if not np.all(np.isfinite(v)):
                raise DimensionError(f"{name} contains non-finite entries")

    @property
    def n(self) -> int:
        return int(self.q.shape[0])

    def derivative(self, k: int, order: int = 0) -> Vector:
        """The k-th time derivative of q; raises if it is absent."""
        v: Vector | None = getattr(self, DERIVATIVE_NAMES[k])
        if v is None:
            raise MissingDerivativeError(DERIVATIVE_NAMES[k], order)
        return v

    def require(self, derivatives: int, order: int) -> None:
        """Raise unless the first ``derivatives`` entries of q, q̇, … are present."""
        for name in DERIVATIVE_NAMES[:derivatives]:
            if getattr(self, name) is None:
                raise MissingDerivativeError(name, order)

    @staticmethod
    def from_arrays(*arrays: object) -> MotionState:
        vecs = [np.asarray(a, dtype=np.float64) for a in arrays]
        return MotionState(*vecs)  # type: ignore[arg-type]


@dataclass(slots=True)
class SystemWorkspace:
    """Per-evaluation scratch holding every stacked operator for one state.

    Not shared between threads; build one per evaluation.
    """

    n: int
    poses: list[Pose]
    rel: list[Pose]
    A: Matrix
    D: Matrix
    X: Matrix
    J: Matrix
    U: Matrix
    adX: list[Matrix]
    qd: Vector | None = None
    qdd: Vector | None = None
    V: Vector | None = None
    Vd: Vector | None = None
    Vdd: Vector | None = None
    a: Matrix | None = None
    b: Matrix | None = None
    adot: Matrix | None = None
    bdot: Matrix | None = None
    addot: Matrix | None = None
    bddot: Matrix | None = None
    Jdot: Matrix | None = None
    Adot: Matrix | None = None
    Jddot: Matrix | None = None


def _check_length(v: Vector, n: int, name: str) -> Vector:
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (n,):
        raise DimensionError(f"{name} must have length {n}, got shape {v.shape}")
    return v


def _require(value: Matrix | Vector | None, what: str) -> Matrix:
    if value is None:
        raise RuntimeError(f"workspace has no {what} yet; evaluate the earlier stage first")
    return value


def _scaled_ad(adX: list[Matrix], s: Vector) -> Matrix:
    """``diag(s_i ad X_i)``."""
    return block_diag(*(si * m for si, m in zip(s, adX, strict=True)))


def _ad_blocks(V: Vector) -> Matrix:
    """``diag(ad V_i)`` for a stacked 6n twist."""
    return block_diag(*(ad(V[6 * i : 6 * i + 6]) for i in range(V.shape[0] // 6)))


# --------------------------------------------------------------------------- #
# Configuration level
# --------------------------------------------------------------------------- #
def forward_kinematics(model: ChainModel, q: Vector) -> tuple[list[Pose], list[Pose]]:
    """Body poses ``C_i`` and relative poses ``C_{i,i−1} = C_i⁻¹ C_{i−1}``.

    ``C_i = B_1 exp(X_1 q_1) ··· B_i exp(X_i q_i)``. The first relative pose
    is taken with respect to the ground.
    """
    q = _check_length(q, model.n, "q")
    poses: list[Pose] = []
    rel: list[Pose] = []
    C = Pose.identity()
    for X, B, qi in zip(model.screws, model.B, q, strict=True):
        local = pose_compose(B, screw_exp(X, float(qi)))
        C = pose_compose(C, local)
        poses.append(C)
        rel.append(pose_inverse(local))
    return poses, rel


def relative_pose(poses: list[Pose], i: int, j: int) -> Pose:
    """``C_{i,j} = C_i⁻¹ C_j`` (0-based indices)."""
    return pose_compose(pose_inverse(poses[i]), poses[j])


def assemble_system(model: ChainModel, q: Vector) -> SystemWorkspace:
    """Poses plus ``A``, ``D``, ``X``, ``J`` and ``U`` at configuration ``q``.

    ``A`` is filled row by row with ``Ad_{C_{i,j}} = Ad_{C_{i,i−1}} Ad_{C_{i−1,j}}``.
    """
    n = model.n
    poses, rel = forward_kinematics(model, q)
    A = np.eye(6 * n)
    D = np.zeros((6 * n, 6 * n))
    for i in range(1, n):
        step = adjoint(rel[i])
        rows = slice(6 * i, 6 * i + 6)
        prev = slice(6 * (i - 1), 6 * i)
        D[rows, prev] = step
        # columns 0..i-1 of row i from row i-1 in one product
        A[rows, : 6 * i] = step @ A[prev, : 6 * i]
    X = model.screw_matrix()
    U = np.vstack([adjoint_inverse(C) for C in poses])
    return SystemWorkspace(
        n=n,
        poses=poses,
        rel=rel,
        A=A,
        D=D,
        X=X,
        J=A @ X,
        U=U,
        adX=[ad(s.vector) for s in model.screws],
    )


# --------------------------------------------------------------------------- #
# Rate level
# --------------------------------------------------------------------------- #
def system_velocity(ws: SystemWorkspace, qd: Vector) -> Vector:
    """``V = J q̇``; also fills ``a`` and ``b``."""
    qd = _check_length(qd, ws.n, "qd")
    ws.qd = qd
    ws.V = ws.J @ qd
    ws.a = _scaled_ad(ws.adX, qd)
    ws.b = _ad_blocks(ws.V)
    return ws.V


def system_jacobian_derivative(ws: SystemWorkspace) -> tuple[Matrix, Matrix]:
    """``J̇ = −A a J`` and ``Ȧ = A a − A a A``."""
    a = _require(ws.a, "a")
    Aa = ws.A @ a
    ws.Jdot = -Aa @ ws.J
    ws.Adot = Aa - Aa @ ws.A
    return ws.Jdot, ws.Adot


def adot_alternative(ws: SystemWorkspace) -> Matrix:
    """``Ȧ = A Ḋ A`` with ``Ḋ = −a D``; agrees with :func:`system_jacobian_derivative`."""
    a = _require(ws.a, "a")
    Ddot = -a @ ws.D
    return ws.A @ Ddot @ ws.A


def system_acceleration(ws: SystemWorkspace, qdd: Vector) -> Vector:
    """``V̇ = J q̈ − A a V``; also fills ``ȧ`` (at q̈) and ``ḃ`` (at V̇)."""
    qdd = _check_length(qdd, ws.n, "qdd")
    a = _require(ws.a, "a")
    V = _require(ws.V, "V")
    ws.qdd = qdd
    ws.Vd = ws.J @ qdd - ws.A @ (a @ V)
    ws.adot = _scaled_ad(ws.adX, qdd)
    ws.bdot = _ad_blocks(ws.Vd)
    return ws.Vd


def system_jerk(ws: SystemWorkspace, qddd: Vector | None) -> Vector:
    """``V̈ = J q⃛ + 2 J̇ q̈ + J̈ q̇``; also fills ``ä`` (at q⃛) and ``b̈`` (at V̈)."""
    if qddd is None:
        raise MissingDerivativeError("qddd", 2)
    qddd = _check_length(qddd, ws.n, "qddd")
    a = _require(ws.a, "a")
    adot = _require(ws.adot, "adot")
    if ws.Jdot is None or ws.Adot is None:
        system_jacobian_derivative(ws)
    Jdot = _require(ws.Jdot, "Jdot")
    Adot = _require(ws.Adot, "Adot")
    Jddot = -Adot @ a @ ws.J - ws.A @ adot @ ws.J - ws.A @ a @ Jdot
    ws.Jddot = Jddot
    ws.Vdd = ws.J @ qddd + 2.0 * (Jdot @ _require(ws.qdd, "qdd")) + Jddot @ _require(ws.qd, "qd")
    ws.addot = _scaled_ad(ws.adX, qddd)
    ws.bddot = _ad_blocks(ws.Vdd)
    return ws.Vdd


def gravity_transform_rate(ws: SystemWorkspace) -> Matrix:
    """``U̇ = −A a U``."""
    return -ws.A @ _require(ws.a, "a") @ ws.U


def body_twist(ws: SystemWorkspace, i: int) -> Twist:
    """Twist of body ``i`` (1-based) in its own frame."""
    V = _require(ws.V, "V")
    if not 1 <= i <= ws.n:
        raise DimensionError(f"body index {i} outside 1..{ws.n}")
    return Twist.from_vector(V[6 * (i - 1) : 6 * i])


def evaluate_workspace(model: ChainModel, state: MotionState, order: int = 2) -> SystemWorkspace:
    """Run the kinematic stages needed for inverse dynamics of ``order``.

    Order 0 stops after ``V̇``; order 1 adds ``J̇``/``Ȧ``; order 2 adds ``V̈``.
    """
    if state.n != model.n:
        raise DimensionError(f"state has {state.n} joints, model {model.name!r} has {model.n}")
    state.require(3 if order < 2 else 4, order)
    ws = assemble_system(model, state.q)
    system_velocity(ws, state.derivative(1, order))
    system_acceleration(ws, state.derivative(2, order))
    if order >= 1:
        system_jacobian_derivative(ws)
    if order >= 2:
        system_jerk(ws, state.derivative(3, order))
    return ws
