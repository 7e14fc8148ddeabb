"""First and second time derivatives of the equations of motion."""

import numpy as np
import pytest

from screwdyn.chain import ChainModel, ExternalWrenchTrajectory
from screwdyn.checks import ladder_wrench
from screwdyn.derivatives import (
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
from screwdyn.dynamics import joint_space_matrices
from screwdyn.errors import MissingDerivativeError
from screwdyn.kinematics import MotionState, evaluate_workspace
from screwdyn.models.enums import FDScheme
from screwdyn.oracles import FDConfig, TwoRParams, fd_derivative, relative_error, two_r_reference
from screwdyn.trajectory import demo_trajectory, sample

CENTRAL_4 = FDConfig(1e-3, FDScheme.CENTRAL_4)


def _random_state(rng: np.random.Generator, n: int) -> MotionState:
    return MotionState(*(rng.uniform(-2, 2, n) for _ in range(5)))


def _bundles(model: ChainModel, state: MotionState):
    ws = evaluate_workspace(model, state, order=2)
    mats = joint_space_matrices(model, ws)
    s = shared_products(model, ws, mats)
    first = first_order_matrices(model, ws, mats, s)
    second = second_order_matrices(model, ws, mats, first, s)
    return ws, mats, s, first, second


def _frozen(n: int, q: np.ndarray) -> MotionState:
    z = np.zeros(n)
    return MotionState(q, z, z, z, z)


# --------------------------------------------------------------------------- #
# Stationary states
# --------------------------------------------------------------------------- #
def test_frozen_state_has_no_matrix_rates(kuka: ChainModel, rng: np.random.Generator) -> None:
    _, _, _, first, second = _bundles(kuka, _frozen(7, rng.uniform(-2, 2, 7)))
    for m in (first.Mdot, first.Cdot, second.Mddot, second.Cddot):
        assert not m.any()


def test_stationary_state_under_constant_load(kuka: ChainModel, rng: np.random.Generator) -> None:
    wrench = ExternalWrenchTrajectory.constant(rng.normal(size=42))
    res = higher_order_inverse_dynamics(kuka, _frozen(7, rng.uniform(-2, 2, 7)), order=2, wrench=wrench)
    assert not res.Qdot.any()
    assert not res.Qddot.any()


# --------------------------------------------------------------------------- #
# Structure
# --------------------------------------------------------------------------- #
def test_mass_matrix_rates_are_symmetric(kuka: ChainModel, rng: np.random.Generator) -> None:
    for _ in range(50):
        _, _, _, first, second = _bundles(kuka, _random_state(rng, 7))
        assert relative_error(first.Mdot, first.Mdot.T) < 1e-12
        assert relative_error(second.Mddot, second.Mddot.T) < 1e-12


def test_mdot_minus_two_cbar_is_skew(kuka: ChainModel, rng: np.random.Generator) -> None:
    for _ in range(50):
        _, mats, _, first, _ = _bundles(kuka, _random_state(rng, 7))
        S = first.Mdot - 2.0 * mats.Cbar
        assert relative_error(S, -S.T) < 1e-12


# --------------------------------------------------------------------------- #
# Equivalent arrangements
# --------------------------------------------------------------------------- #
def test_dual_forms_agree(kuka: ChainModel, rng: np.random.Generator) -> None:
    for _ in range(100):
        ws, mats, s, first, second = _bundles(kuka, _random_state(rng, 7))
        assert relative_error(first.C1sys, coriolis1_explicit(kuka, ws, s)) < 1e-12
        assert relative_error(second.M2sys, mass2_explicit(kuka, ws, s)) < 1e-11
        assert relative_error(second.Csysddot, coriolis_ddot_explicit(kuka, ws, s)) < 1e-11
        expanded = coriolis1_dot_expanded(kuka, ws, mats, first, second.Csysddot, s)
        assert relative_error(second.C1sysdot, expanded) < 1e-11
        assert relative_error(second.C2sys, coriolis2_explicit(kuka, ws, mats, s)) < 1e-11


def test_shared_products_reuse_zeroth_order(kuka: ChainModel, rng: np.random.Generator) -> None:
    ws = evaluate_workspace(kuka, _random_state(rng, 7), order=2)
    mats = joint_space_matrices(kuka, ws)
    reused, fresh = shared_products(kuka, ws, mats), shared_products(kuka, ws)
    assert reused.MAa is mats.MAa
    assert np.allclose(reused.MAa, fresh.MAa, rtol=0, atol=1e-12)
    assert np.allclose(reused.bTM, fresh.bTM, rtol=0, atol=1e-12)


# --------------------------------------------------------------------------- #
# Textbook 2R
# --------------------------------------------------------------------------- #
def test_two_r_regression_state(two_r: ChainModel, regression_state: MotionState) -> None:
    res = higher_order_inverse_dynamics(two_r, regression_state, order=2)
    ref = two_r_reference(TwoRParams(), regression_state)
    assert relative_error(res.Q, ref.tau) < 1e-12
    assert relative_error(res.Qdot, ref.taudot) < 1e-12
    assert relative_error(res.Qddot, ref.tauddot) < 1e-11


def test_two_r_random_states(two_r: ChainModel, rng: np.random.Generator) -> None:
    for _ in range(200):
        state = _random_state(rng, 2)
        res = higher_order_inverse_dynamics(two_r, state, order=2)
        ref = two_r_reference(TwoRParams(), state)
        assert relative_error(res.Q, ref.tau) < 1e-11
        assert relative_error(res.Qdot, ref.taudot) < 1e-11
        assert relative_error(res.Qddot, ref.tauddot) < 1e-11


# --------------------------------------------------------------------------- #
# Finite-difference ladder
# --------------------------------------------------------------------------- #
@pytest.mark.parametrize("t", [0.0, 1.3, 4.9, 8.2])
def test_ladder_along_demo_trajectory(kuka: ChainModel, t: float) -> None:
    traj = demo_trajectory(7)
    wrench = ladder_wrench(7)

    def at(tau: float, order: int = 2):
        return higher_order_inverse_dynamics(kuka, sample(traj, tau), order=order, wrench=wrench, t=tau)

    res = at(t)
    assert relative_error(fd_derivative(lambda s: at(s, 0).Q, t, CENTRAL_4), res.Qdot) < 1e-6
    assert relative_error(fd_derivative(lambda s: at(s, 1).Qdot, t, CENTRAL_4), res.Qddot) < 1e-6
    assert relative_error(fd_derivative(lambda s: at(s).matrices.M, t, CENTRAL_4), res.first.Mdot) < 1e-6
    assert relative_error(fd_derivative(lambda s: at(s).first.Mdot, t, CENTRAL_4), res.second.Mddot) < 1e-6
    assert relative_error(fd_derivative(lambda s: at(s).matrices.C, t, CENTRAL_4), res.first.Cdot) < 1e-6
    assert relative_error(fd_derivative(lambda s: at(s).first.Cdot, t, CENTRAL_4), res.second.Cddot) < 1e-6


def test_load_rates_follow_the_wrench(kuka: ChainModel) -> None:
    traj = demo_trajectory(7)
    wrench = ladder_wrench(7)
    t = 2.2

    def at(tau: float):
        return higher_order_inverse_dynamics(kuka, sample(traj, tau), order=2, wrench=wrench, t=tau)

    res = at(t)
    assert relative_error(fd_derivative(lambda s: at(s).forces.Qext, t, CENTRAL_4), res.first.Qextdot) < 1e-6
    assert relative_error(fd_derivative(lambda s: at(s).first.Qextdot, t, CENTRAL_4), res.second.Qextddot) < 1e-6
    assert relative_error(fd_derivative(lambda s: at(s).forces.Qgrav, t, CENTRAL_4), res.first.Qgravdot) < 1e-6


# --------------------------------------------------------------------------- #
# Partial evaluation
# --------------------------------------------------------------------------- #
def test_order_stops_the_pipeline(kuka: ChainModel, rng: np.random.Generator) -> None:
    state = _random_state(rng, 7)
    zeroth = higher_order_inverse_dynamics(kuka, state, order=0)
    first = higher_order_inverse_dynamics(kuka, state, order=1)
    second = higher_order_inverse_dynamics(kuka, state, order=2)
    assert (zeroth.order, first.order, second.order) == (0, 1, 2)
    assert zeroth.first is None and first.second is None
    assert np.array_equal(zeroth.Q, second.Q)
    assert np.array_equal(first.Qdot, second.Qdot)


def test_order_needs_matching_derivatives(kuka: ChainModel) -> None:
    z = np.zeros(7)
    state = MotionState(z, z, z, z)
    higher_order_inverse_dynamics(kuka, state, order=1)
    with pytest.raises(MissingDerivativeError) as exc:
        higher_order_inverse_dynamics(kuka, state, order=2)
    assert exc.value.name == "qdddd"


def test_order_out_of_range(kuka: ChainModel) -> None:
    with pytest.raises(ValueError):
        higher_order_inverse_dynamics(kuka, _frozen(7, np.zeros(7)), order=3)
