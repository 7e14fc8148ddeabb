"""Chain description: joints, reference configurations and body inertias.

A :class:`ChainModel` is built once (usually by :func:`load_model`) and never
mutated afterwards, so one instance can back any number of concurrent
evaluations.

Body ``i`` is attached to its predecessor ``i−1`` by joint ``i``; ``B_i`` is the
pose of body ``i`` relative to body ``i−1`` at ``q = 0`` and ``ⁱX_i`` the joint
screw in body ``i``'s own frame.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import ValidationError
from scipy.linalg import block_diag

from screwdyn.errors import AxisNormError, DimensionError, ModelValidationError
from screwdyn.liegroup import AXIS_TOLERANCE, JointScrew, Matrix, Pose, Vector, Wrench, skew
from screwdyn.models.chain_file import BodySpec, ChainFile, JointSpec, PoseSpec, inertia_tensor
from screwdyn.models.enums import JointKind
from screwdyn.models.run_config import WrenchSpec

__all__ = [
    "SHIPPED_MODELS",
    "BodyInertia",
    "ChainModel",
    "ExternalWrenchTrajectory",
    "dump_model",
    "end_effector_wrench",
    "joint_screw_from_axis",
    "load_model",
    "model_from_file",
    "shipped_model_path",
    "spatial_inertia",
]

logger = logging.getLogger(__name__)

SHIPPED_MODELS = ("two_r", "kuka_iiwa14", "pendulum")

# Dense 6n×6n operators are fine at desk scale; beyond this the O(n³) products
# start to dominate and a block-sparse layout would pay off.
DENSE_LIMIT = 16

_SYMMETRY_TOLERANCE = 1e-12


# --------------------------------------------------------------------------- #
# Domain types
# --------------------------------------------------------------------------- #
@dataclass(frozen=True, slots=True)
class BodyInertia:
    """Mass properties of one body in its body-fixed frame."""

    m: float
    c: Vector
    theta_c: Matrix
    R_bc: Matrix = field(default_factory=lambda: np.eye(3))

    def __post_init__(self) -> None:
        if not self.m > 0:
            raise ModelValidationError("mass", f"must be positive, got {self.m}")
        if float(np.abs(self.theta_c - self.theta_c.T).max()) > _SYMMETRY_TOLERANCE:
            raise ModelValidationError("inertia_com", "COM inertia tensor is not symmetric")


@dataclass(frozen=True, slots=True, eq=False)
class ChainModel:
    """An immutable n-joint serial chain mounted at the ground."""

    name: str
    screws: tuple[JointScrew, ...]
    B: tuple[Pose, ...]
    bodies: tuple[BodyInertia, ...]
    gravity: Vector
    Msys: Matrix = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.screws)
        if n < 1:
            raise ModelValidationError("joints", "a chain needs at least one joint")
        if len(self.B) != n or len(self.bodies) != n:
            raise ModelValidationError(
                "bodies", f"{n} joints, {len(self.B)} reference poses, {len(self.bodies)} bodies"
            )
        for i, B in enumerate(self.B):
            if not B.is_valid():
                raise ModelValidationError(f"joints[{i}].B", "reference pose is not a valid SE(3) element")
        if n > DENSE_LIMIT:
            logger.warning(f"{self.name}: n={n} exceeds the dense-storage design limit of {DENSE_LIMIT}")
        object.__setattr__(self, "Msys", self.mass_operator())

    @property
    def n(self) -> int:
        return len(self.screws)

    @property
    def G(self) -> Vector:
        """``G = −(0, ⁰g)``: gravity as a base acceleration twist."""
        return np.concatenate([np.zeros(3), -np.asarray(self.gravity, dtype=np.float64)])

    def spatial_inertias(self) -> list[Matrix]:
        return [spatial_inertia(b) for b in self.bodies]

    def mass_operator(self) -> Matrix:
        """Block-diagonal ``𝖬 = diag(M_1, …, M_n)``."""
        return block_diag(*self.spatial_inertias())

    def screw_matrix(self) -> Matrix:
        """Block-diagonal ``𝖷`` (6n×n) of the joint screws."""
        return block_diag(*(X.vector.reshape(6, 1) for X in self.screws))


# --------------------------------------------------------------------------- #
# Operations
# --------------------------------------------------------------------------- #
def spatial_inertia(b: BodyInertia) -> Matrix:
    """``[[Θᵇ, c̃m], [−c̃m, mI]]`` with Steiner ``Θᵇ = R Θᶜ Rᵀ − m c̃c̃``."""
    if not b.m > 0:
        raise ModelValidationError("mass", f"must be positive, got {b.m}")
    c = skew(b.c)
    theta_b = b.R_bc @ b.theta_c @ b.R_bc.T - b.m * (c @ c)
    out = np.zeros((6, 6))
    out[:3, :3] = 0.5 * (theta_b + theta_b.T)
    out[:3, 3:] = b.m * c
    out[3:, :3] = -b.m * c
    out[3:, 3:] = b.m * np.eye(3)
    return out


def joint_screw_from_axis(
    e: Sequence[float] | Vector,
    x: Sequence[float] | Vector = (0.0, 0.0, 0.0),
    kind: JointKind = JointKind.REVOLUTE,
    h: float | None = None,
) -> JointScrew:
    """Screw coordinates from an axis direction ``e`` through point ``x``.

    revolute ``(e, x×e)``; prismatic ``(0, e)``; helical ``(e, x×e + e h)``.
    """
    e = np.asarray(e, dtype=np.float64).reshape(3)
    x = np.asarray(x, dtype=np.float64).reshape(3)
    norm = float(np.linalg.norm(e))
    if abs(norm - 1.0) > AXIS_TOLERANCE:
        raise AxisNormError(norm, AXIS_TOLERANCE)
    if kind is JointKind.PRISMATIC:
        return JointScrew(np.zeros(3), e.copy(), kind, None)
    if kind is JointKind.HELICAL:
        pitch = float(h if h is not None else 0.0)
        return JointScrew(e.copy(), np.cross(x, e) + e * pitch, kind, pitch)
    return JointScrew(e.copy(), np.cross(x, e), kind, 0.0)


def _error_path(loc: tuple[int | str, ...]) -> str:
    """('bodies', 0, 'mass') → 'bodies[0].mass'."""
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path


def _pose(spec: PoseSpec) -> Pose:
    return Pose(np.asarray(spec.R, dtype=np.float64).reshape(3, 3), np.asarray(spec.r, dtype=np.float64))


def model_from_file(doc: ChainFile) -> ChainModel:
    """Numeric :class:`ChainModel` from an already-validated file document."""
    screws: list[JointScrew] = []
    for i, j in enumerate(doc.joints):
        try:
            screws.append(joint_screw_from_axis(j.axis, j.point, j.kind, j.pitch))
        except AxisNormError as e:
            raise ModelValidationError(f"joints[{i}].axis", str(e)) from e
    bodies: list[BodyInertia] = []
    for i, b in enumerate(doc.bodies):
        R_bc = np.eye(3) if b.R_bc is None else np.asarray(b.R_bc, dtype=np.float64).reshape(3, 3)
        try:
            bodies.append(
                BodyInertia(
                    m=b.mass,
                    c=np.asarray(b.com, dtype=np.float64),
                    theta_c=inertia_tensor(b.inertia_com),
                    R_bc=R_bc,
                )
            )
        except ModelValidationError as e:
            raise ModelValidationError(f"bodies[{i}].{e.path}", e.message) from e
    return ChainModel(
        name=doc.name,
        screws=tuple(screws),
        B=tuple(_pose(j.B) for j in doc.joints),
        bodies=tuple(bodies),
        gravity=np.asarray(doc.gravity, dtype=np.float64),
    )


def load_model(path: str | Path) -> ChainModel:
    """Parse and validate a model JSON file.

    Raises:
        ModelValidationError: parse failure or a violated invariant; ``path``
            on the error names the offending field.
        OSError: the file cannot be read.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = ChainFile.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        raise ModelValidationError(_error_path(tuple(first["loc"])), first["msg"]) from e
    model = model_from_file(doc)
    logger.debug(f"Loaded model {model.name!r} (n={model.n}) from {path}")
    return model


def _floats(a: Vector | Matrix) -> list[float]:
    return [float(v) for v in np.asarray(a, dtype=np.float64).ravel()]


def _is_identity(R: Matrix) -> bool:
    return bool(np.array_equal(R, np.eye(3)))


def to_file(model: ChainModel) -> ChainFile:
    """The file document describing ``model`` (inverse of :func:`model_from_file`)."""
    joints: list[JointSpec] = []
    for X, B in zip(model.screws, model.B, strict=True):
        joints.append(
            JointSpec(
                kind=X.kind,
                axis=_floats(X.axis),
                point=_floats(X.point),
                pitch=X.pitch if X.kind is JointKind.HELICAL else None,
                B=PoseSpec(R=_floats(B.R), r=_floats(B.r)),
            )
        )
    bodies = [
        BodySpec(
            mass=float(b.m),
            com=_floats(b.c),
            inertia_com=[
                float(b.theta_c[0, 0]),
                float(b.theta_c[0, 1]),
                float(b.theta_c[0, 2]),
                float(b.theta_c[1, 1]),
                float(b.theta_c[1, 2]),
                float(b.theta_c[2, 2]),
            ],
            R_bc=None if _is_identity(b.R_bc) else _floats(b.R_bc),
        )
        for b in model.bodies
    ]
    return ChainFile(name=model.name, gravity=_floats(model.gravity), joints=joints, bodies=bodies)


def dump_model(model: ChainModel) -> str:
    """Canonical JSON text for ``model``; ``load_model`` reads it back bit-identically."""
    data = to_file(model).model_dump(mode="json", exclude_none=True)
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def shipped_model_path(name: str) -> Path:
    """Path of a model file shipped with the package (``two_r``, ``kuka_iiwa14``, ``pendulum``)."""
    if name not in SHIPPED_MODELS:
        raise ModelValidationError("name", f"unknown shipped model {name!r}; have {', '.join(SHIPPED_MODELS)}")
    return Path(str(resources.files("screwdyn") / "robots" / f"{name}.json"))


# --------------------------------------------------------------------------- #
# External loads
# --------------------------------------------------------------------------- #
WrenchFn = Callable[[float], Vector]


def _zeros(n: int) -> WrenchFn:
    return lambda _t: np.zeros(6 * n)


@dataclass(frozen=True)
class ExternalWrenchTrajectory:
    """Stacked system wrench ``𝖶(t)`` and its first two time derivatives.

    Each callable returns the 6n stacked vector ``(W_1, …, W_n)`` of body-frame
    wrenches. A second derivative may only be given together with the first.
    """

    n: int
    W: WrenchFn
    Wdot: WrenchFn | None = None
    Wddot: WrenchFn | None = None

    def __post_init__(self) -> None:
        if self.Wddot is not None and self.Wdot is None:
            raise DimensionError("a second wrench derivative needs the first one too")

    def evaluate(self, t: float) -> tuple[Vector, Vector, Vector]:
        zero = np.zeros(6 * self.n)
        W = np.asarray(self.W(t), dtype=np.float64)
        if W.shape != (6 * self.n,):
            raise DimensionError(f"wrench must have {6 * self.n} entries, got {W.shape}")
        Wd = zero if self.Wdot is None else np.asarray(self.Wdot(t), dtype=np.float64)
        Wdd = zero if self.Wddot is None else np.asarray(self.Wddot(t), dtype=np.float64)
        return W, Wd, Wdd

    @staticmethod
    def zero(n: int) -> ExternalWrenchTrajectory:
        return ExternalWrenchTrajectory(n, _zeros(n), _zeros(n), _zeros(n))

    @staticmethod
    def constant(W: Vector) -> ExternalWrenchTrajectory:
        W = np.asarray(W, dtype=np.float64).ravel()
        if W.size % 6:
            raise DimensionError(f"stacked wrench length {W.size} is not a multiple of 6")
        n = W.size // 6
        return ExternalWrenchTrajectory(n, lambda _t: W, _zeros(n), _zeros(n))

    @staticmethod
    def from_spec(spec: WrenchSpec, n: int) -> ExternalWrenchTrajectory:
        """Sinusoidal load on one body, zero elsewhere."""
        body = spec.body if spec.body is not None else n
        if not 1 <= body <= n:
            raise DimensionError(f"wrench body {body} outside 1..{n}")
        offset = np.asarray(spec.offset, dtype=np.float64)
        amp = np.asarray(spec.amplitude, dtype=np.float64)
        w, phi = spec.frequency, spec.phase

        def W(t: float) -> Vector:
            return end_effector_wrench(n, Wrench.from_vector(offset + amp * np.sin(w * t + phi)), body)

        def Wd(t: float) -> Vector:
            return end_effector_wrench(n, Wrench.from_vector(amp * w * np.cos(w * t + phi)), body)

        def Wdd(t: float) -> Vector:
            return end_effector_wrench(n, Wrench.from_vector(-amp * w * w * np.sin(w * t + phi)), body)

        return ExternalWrenchTrajectory(n, W, Wd, Wdd)


def end_effector_wrench(n: int, w: Wrench, body: int | None = None) -> Vector:
    """Stacked 6n wrench with ``w`` on ``body`` (1-based, default n) and zeros elsewhere."""
    body = n if body is None else body
    out = np.zeros(6 * n)
    out[6 * (body - 1) : 6 * body] = w.vector
    return out


def describe(model: ChainModel) -> dict[str, Any]:
    """Short summary used by ``screwdyn model validate``."""
    return {
        "name": model.name,
        "n": model.n,
        "kinds": [X.kind.value for X in model.screws],
        "total_mass": float(sum(b.m for b in model.bodies)),
        "gravity": _floats(model.gravity),
    }
