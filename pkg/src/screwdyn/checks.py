"""Property and oracle suites behind ``screwdyn check``.

Each suite reduces many states to one worst-case number and compares it with
a tolerance. Errors are relative, ``‖x − ref‖_F / (1 + ‖ref‖_F)``, unless the
suite name says otherwise.

Kept free of printing and exit codes so the same report backs the CLI and the
tests.
"""

from __future__ import annotations

import dataclasses
import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from screwdyn.chain import ChainModel, ExternalWrenchTrajectory
from screwdyn.derivatives import (
    HigherOrderForces,
    coriolis1_dot_expanded,
    coriolis1_explicit,
    coriolis2_explicit,
    coriolis_ddot_explicit,
    first_order_matrices,
    higher_order_inverse_dynamics,
    mass2_explicit,
    second_order_matrices,
    shared_products,
)
from screwdyn.dynamics import is_positive_definite, joint_space_matrices, kinetic_energy
from screwdyn.kinematics import MotionState, adot_alternative, evaluate_workspace, gravity_transform_rate
from screwdyn.models.enums import FDScheme
from screwdyn.models.run_config import WrenchSpec
from screwdyn.oracles import FDConfig, fd_derivative, relative_error, two_r_params_from_model, two_r_reference
from screwdyn.trajectory import CosineTrajectory, demo_trajectory, sample

__all__ = ["CheckReport", "CheckResult", "ladder_wrench", "random_state", "run_checks"]

logger = logging.getLogger(__name__)

# Pure round-off: symmetry, skew-symmetry, C q̇ = C̄ q̇, Ȧ routes.
STRUCTURE_TOLERANCE = 1e-12
# Two algebraic arrangements of the same derivative matrix.
DUAL_FORM_TOLERANCE = 1e-11
# Products of a block with itself (a X, b V, a ȧ − ȧ a).
NULL_PRODUCT_TOLERANCE = 1e-14
INVERSE_TOLERANCE = 1e-10
JDOT_TOLERANCE = 1e-13
FD_TOLERANCE = 1e-6
TWO_R_TOLERANCE = 1e-11

# Fourth-order stencil: truncation ~h⁴, round-off ~ε/h, both well below 1e-6.
FD_STEP = 1e-3
FD_POINTS = 200
STATE_RANGE = 2.0


@dataclass(frozen=True, slots=True)
class CheckResult:
    name: str
    worst: float
    tolerance: float
    samples: int

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.worst)) and self.worst <= self.tolerance


@dataclass(slots=True)
class CheckReport:
    model: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "model": self.model,
            "clean": self.clean,
            "results": [
                {
                    "name": r.name,
                    "worst": r.worst,
                    "tolerance": r.tolerance,
                    "samples": r.samples,
                    "passed": r.passed,
                }
                for r in self.results
            ],
        }


class _Worst:
    """Running maximum per suite, in insertion order."""

    def __init__(self) -> None:
        self._data: dict[str, tuple[float, float, int]] = {}

    def add(self, name: str, value: float, tolerance: float) -> None:
        worst, _, count = self._data.get(name, (-np.inf, tolerance, 0))
        value = float(value) if np.isfinite(value) else np.inf
        self._data[name] = (max(worst, value), tolerance, count + 1)

    def results(self) -> Iterator[CheckResult]:
        for name, (worst, tol, count) in self._data.items():
            yield CheckResult(name=name, worst=worst, tolerance=tol, samples=count)


def _skew_error(S: np.ndarray) -> float:
    return relative_error(S, -S.T)


def _sym_error(S: np.ndarray) -> float:
    return relative_error(S, S.T)


def random_state(rng: np.random.Generator, n: int, spread: float = STATE_RANGE) -> MotionState:
    """q … q⁗ drawn uniformly from ``[−spread, spread]``."""
    return MotionState(*(rng.uniform(-spread, spread, n) for _ in range(5)))


# --------------------------------------------------------------------------- #
# Suites
# --------------------------------------------------------------------------- #
def _state_suites(model: ChainModel, state: MotionState, worst: _Worst) -> None:
    ws = evaluate_workspace(model, state, order=2)
    mats = joint_space_matrices(model, ws)
    s = shared_products(model, ws, mats)
    first = first_order_matrices(model, ws, mats, s)
    second = second_order_matrices(model, ws, mats, first, s)
    assert ws.a is not None and ws.b is not None and ws.V is not None and ws.adot is not None
    assert ws.Adot is not None and ws.Jdot is not None
    qd = state.derivative(1)

    eig_min = float(np.linalg.eigvalsh(0.5 * (mats.M + mats.M.T))[0])
    worst.add("mass matrix symmetric", _sym_error(mats.M), STRUCTURE_TOLERANCE)
    worst.add("mass matrix positive definite (1e-10 − λmin)", 1e-10 - eig_min, 0.0)
    if not is_positive_definite(mats.M):
        logger.warning(f"{model.name}: mass matrix not positive definite at q={state.q}")
    worst.add("Ṁ symmetric", _sym_error(first.Mdot), STRUCTURE_TOLERANCE)
    worst.add("M̈ symmetric", _sym_error(second.Mddot), STRUCTURE_TOLERANCE)
    worst.add("Ṁ − 2C̄ skew-symmetric", _skew_error(first.Mdot - 2.0 * mats.Cbar), STRUCTURE_TOLERANCE)
    worst.add("C q̇ = C̄ q̇", relative_error(mats.C @ qd, mats.Cbar @ qd), STRUCTURE_TOLERANCE)

    scale = 1.0 + float(np.linalg.norm(qd))
    worst.add("a X = 0 (scaled)", float(np.linalg.norm(ws.a @ ws.X)) / scale, NULL_PRODUCT_TOLERANCE)
    vscale = 1.0 + float(np.linalg.norm(ws.V))
    worst.add("b V = 0 (scaled)", float(np.linalg.norm(ws.b @ ws.V)) / vscale, NULL_PRODUCT_TOLERANCE)
    ascale = scale * (1.0 + float(np.linalg.norm(state.derivative(2))))
    worst.add(
        "a ȧ = ȧ a (scaled)",
        float(np.linalg.norm(ws.a @ ws.adot - ws.adot @ ws.a)) / ascale,
        NULL_PRODUCT_TOLERANCE,
    )
    eye = np.eye(ws.A.shape[0])
    worst.add("A (I − D) = I (absolute)", float(np.abs(ws.A @ (eye - ws.D) - eye).max()), INVERSE_TOLERANCE)
    worst.add("Ȧ X = J̇", relative_error(ws.Adot @ ws.X, ws.Jdot), JDOT_TOLERANCE)
    worst.add("Ȧ = A a − A a A = A Ḋ A", relative_error(adot_alternative(ws), ws.Adot), STRUCTURE_TOLERANCE)

    worst.add("C⁽¹⁾ reuse = explicit", relative_error(first.C1sys, coriolis1_explicit(model, ws, s)), DUAL_FORM_TOLERANCE)
    worst.add("M⁽²⁾ reuse = explicit", relative_error(second.M2sys, mass2_explicit(model, ws, s)), DUAL_FORM_TOLERANCE)
    worst.add(
        "C̈ derived = merged",
        relative_error(second.Csysddot, coriolis_ddot_explicit(model, ws, s)),
        DUAL_FORM_TOLERANCE,
    )
    worst.add(
        "Ċ⁽¹⁾ reuse = expanded",
        relative_error(second.C1sysdot, coriolis1_dot_expanded(model, ws, mats, first, second.Csysddot, s)),
        DUAL_FORM_TOLERANCE,
    )
    worst.add(
        "C⁽²⁾ reuse = explicit",
        relative_error(second.C2sys, coriolis2_explicit(model, ws, mats, s)),
        DUAL_FORM_TOLERANCE,
    )


def _two_r_suite(model: ChainModel, state: MotionState, worst: _Worst) -> None:
    params = two_r_params_from_model(model)
    if params is None:
        return
    ref = two_r_reference(params, state)
    got = higher_order_inverse_dynamics(model, state, order=2)
    worst.add("2R closed form: Q", relative_error(got.Q, ref.tau), TWO_R_TOLERANCE)
    worst.add("2R closed form: Q̇", relative_error(got.Qdot, ref.taudot), TWO_R_TOLERANCE)
    worst.add("2R closed form: Q̈", relative_error(got.Qddot, ref.tauddot), TWO_R_TOLERANCE)


def ladder_wrench(n: int) -> ExternalWrenchTrajectory:
    """A smooth end-effector load used to exercise ``Q̇_ext`` and ``Q̈_ext``."""
    spec = WrenchSpec(
        offset=[0.1, -0.2, 0.05, 1.0, 0.5, -2.0],
        amplitude=[0.05, 0.05, 0.02, 0.5, -0.3, 0.4],
        frequency=1.3,
        phase=0.2,
    )
    return ExternalWrenchTrajectory.from_spec(spec, n)


def _fd_ladder(
    model: ChainModel, traj: CosineTrajectory, times: np.ndarray, worst: _Worst
) -> None:
    wrench = ladder_wrench(model.n)
    cfg = FDConfig(FD_STEP, FDScheme.CENTRAL_4)

    def at(t: float) -> HigherOrderForces:
        return higher_order_inverse_dynamics(model, sample(traj, t), order=2, wrench=wrench, t=t)

    def Q(t: float) -> np.ndarray:
        return higher_order_inverse_dynamics(model, sample(traj, t), order=0, wrench=wrench, t=t).Q

    def Qdot(t: float) -> np.ndarray:
        out = higher_order_inverse_dynamics(model, sample(traj, t), order=1, wrench=wrench, t=t).Qdot
        assert out is not None
        return out

    def M(t: float) -> np.ndarray:
        mats = at(t).matrices
        assert mats is not None
        return mats.M

    def Mdot(t: float) -> np.ndarray:
        first = at(t).first
        assert first is not None
        return first.Mdot

    def U(t: float) -> np.ndarray:
        return evaluate_workspace(model, sample(traj, t, 2), order=0).U

    for t in times:
        t = float(t)
        res = at(t)
        assert res.first is not None and res.second is not None
        ws = evaluate_workspace(model, sample(traj, t, 2), order=0)
        worst.add("FD ladder: d/dt U = −A a U", relative_error(fd_derivative(U, t, cfg), gravity_transform_rate(ws)), FD_TOLERANCE)
        worst.add("FD ladder: d/dt Q = Q̇", relative_error(fd_derivative(Q, t, cfg), res.Qdot), FD_TOLERANCE)
        worst.add("FD ladder: d/dt Q̇ = Q̈", relative_error(fd_derivative(Qdot, t, cfg), res.Qddot), FD_TOLERANCE)
        worst.add("FD ladder: d/dt M = Ṁ", relative_error(fd_derivative(M, t, cfg), res.first.Mdot), FD_TOLERANCE)
        worst.add(
            "FD ladder: d/dt Ṁ = M̈", relative_error(fd_derivative(Mdot, t, cfg), res.second.Mddot), FD_TOLERANCE
        )


def _power_balance(model: ChainModel, traj: CosineTrajectory, times: np.ndarray, worst: _Worst) -> None:
    """Without gravity or load, ``q̇ᵀQ = d/dt T``."""
    free = dataclasses.replace(model, gravity=np.zeros(3))
    cfg = FDConfig(FD_STEP, FDScheme.CENTRAL_4)

    def energy(t: float) -> float:
        return kinetic_energy(free, evaluate_workspace(free, sample(traj, t, 2), order=0))

    for t in times:
        t = float(t)
        s = sample(traj, t, 2)
        power = float(s.derivative(1) @ higher_order_inverse_dynamics(free, s, order=0).Q)
        worst.add("power balance q̇ᵀQ = dT/dt", relative_error(power, fd_derivative(energy, t, cfg)), FD_TOLERANCE)


def run_checks(
    model: ChainModel,
    samples: int = 1000,
    seed: int = 0,
    traj: CosineTrajectory | None = None,
    duration: float = 10.0,
) -> CheckReport:
    """Run every suite on ``samples`` random states plus the trajectory ladder."""
    rng = np.random.default_rng(seed)
    worst = _Worst()
    for _ in range(samples):
        state = random_state(rng, model.n)
        _state_suites(model, state, worst)
        _two_r_suite(model, state, worst)

    traj = traj or demo_trajectory(model.n)
    times = np.linspace(0.0, duration, min(samples, FD_POINTS))
    _fd_ladder(model, traj, times, worst)
    _power_balance(model, traj, times, worst)

    report = CheckReport(model=model.name, results=list(worst.results()))
    logger.debug(f"{model.name}: {len(report.results)} suites, {len(report.failures)} failing")
    return report
