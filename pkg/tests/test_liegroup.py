"""SE(3) primitives against brute-force series and commutator oracles."""

from math import factorial, pi

import numpy as np
import pytest
from scipy.linalg import expm

from screwdyn.chain import joint_screw_from_axis
from screwdyn.errors import AxisNormError
from screwdyn.liegroup import (
    JointScrew,
    Pose,
    ad,
    adjoint,
    adjoint_inverse,
    pose_compose,
    pose_inverse,
    rot_exp,
    screw_exp,
    skew,
)
from screwdyn.models.enums import JointKind

SERIES_TERMS = 30


def _series(A: np.ndarray) -> np.ndarray:
    out = np.zeros_like(A)
    term = np.eye(A.shape[0])
    for k in range(SERIES_TERMS):
        out = out + term / factorial(k)
        term = term @ A
    return out


def _unit(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def _random_pose(rng: np.random.Generator) -> Pose:
    return Pose(rot_exp(_unit(rng), rng.uniform(-pi, pi)), rng.uniform(-2, 2, 3))


def _hat(X: np.ndarray) -> np.ndarray:
    out = np.zeros((4, 4))
    out[:3, :3] = skew(X[:3])
    out[:3, 3] = X[3:]
    return out


def _vee(T: np.ndarray) -> np.ndarray:
    return np.array([T[2, 1], T[0, 2], T[1, 0], T[0, 3], T[1, 3], T[2, 3]])


# --------------------------------------------------------------------------- #
# skew / rot_exp
# --------------------------------------------------------------------------- #
def test_skew_of_zero_is_zero() -> None:
    assert np.array_equal(skew(np.zeros(3)), np.zeros((3, 3)))


def test_skew_is_the_cross_product(rng: np.random.Generator) -> None:
    assert np.allclose(skew(np.array([0.0, 0.0, 1.0])) @ [1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
    for _ in range(20):
        v, w = rng.normal(size=3), rng.normal(size=3)
        assert np.allclose(skew(v) @ w, np.cross(v, w), atol=1e-15)


def test_rot_exp_at_zero_angle_is_identity() -> None:
    assert np.array_equal(rot_exp(np.array([0.0, 1.0, 0.0]), 0.0), np.eye(3))


def test_quarter_turn_about_z_maps_x_to_y() -> None:
    R = rot_exp(np.array([0.0, 0.0, 1.0]), pi / 2)
    assert np.allclose(R @ [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], atol=1e-15)


def test_rot_exp_matches_power_series(rng: np.random.Generator) -> None:
    for _ in range(100):
        e, phi = _unit(rng), rng.uniform(-pi, pi)
        assert np.abs(rot_exp(e, phi) - _series(phi * skew(e))).max() < 1e-12


def test_rot_exp_by_opposite_angles_is_identity(rng: np.random.Generator) -> None:
    for _ in range(100):
        e, phi = _unit(rng), rng.uniform(-2 * pi, 2 * pi)
        assert np.abs(rot_exp(e, phi) @ rot_exp(e, -phi) - np.eye(3)).max() < 1e-12
        assert np.abs(rot_exp(e, phi).T - rot_exp(e, -phi)).max() < 1e-12


def test_rot_exp_rejects_non_unit_axis() -> None:
    with pytest.raises(AxisNormError):
        rot_exp(np.array([0.0, 0.0, 1.1]), 0.3)


# --------------------------------------------------------------------------- #
# screw_exp
# --------------------------------------------------------------------------- #
def test_half_turn_about_z_through_origin() -> None:
    C = screw_exp(JointScrew.from_vector([0, 0, 1, 0, 0, 0]), pi)
    assert np.allclose(C.R, np.diag([-1.0, -1.0, 1.0]), atol=1e-15)
    assert np.allclose(C.r, 0.0, atol=1e-15)


def test_prismatic_exponential_is_a_translation() -> None:
    X = joint_screw_from_axis([1.0, 0.0, 0.0], kind=JointKind.PRISMATIC)
    C = screw_exp(X, 2.0)
    assert np.array_equal(C.R, np.eye(3))
    assert np.allclose(C.r, [2.0, 0.0, 0.0])


@pytest.mark.parametrize("kind", [JointKind.REVOLUTE, JointKind.PRISMATIC, JointKind.HELICAL])
def test_screw_exp_matches_homogeneous_series(rng: np.random.Generator, kind: JointKind) -> None:
    for _ in range(100):
        e, x = _unit(rng), rng.uniform(-1, 1, 3)
        X = joint_screw_from_axis(e, x, kind, rng.uniform(-0.5, 0.5) if kind is JointKind.HELICAL else None)
        phi = rng.uniform(-2, 2)
        T = screw_exp(X, phi).homogeneous()
        assert np.abs(T - _series(phi * _hat(X.vector))).max() < 1e-12
        assert np.abs(T - expm(phi * _hat(X.vector))).max() < 1e-12


@pytest.mark.parametrize("kind", [JointKind.REVOLUTE, JointKind.PRISMATIC, JointKind.HELICAL])
def test_screw_exp_is_a_one_parameter_subgroup(rng: np.random.Generator, kind: JointKind) -> None:
    for _ in range(100):
        e, x = _unit(rng), rng.uniform(-1, 1, 3)
        X = joint_screw_from_axis(e, x, kind, rng.uniform(-0.5, 0.5) if kind is JointKind.HELICAL else None)
        a, b = rng.uniform(-2, 2, 2)
        composed = pose_compose(screw_exp(X, a), screw_exp(X, b)).homogeneous()
        assert np.abs(composed - screw_exp(X, a + b).homogeneous()).max() < 1e-12
        undone = pose_compose(screw_exp(X, a), screw_exp(X, -a)).homogeneous()
        assert np.abs(undone - np.eye(4)).max() < 1e-12


# --------------------------------------------------------------------------- #
# adjoint / ad
# --------------------------------------------------------------------------- #
def test_adjoint_of_identity_is_identity() -> None:
    assert np.array_equal(adjoint(Pose.identity()), np.eye(6))


def test_adjoint_of_translation_has_skew_lower_block() -> None:
    r = np.array([0.0, 0.0, 1.0])
    Ad = adjoint(Pose.from_translation(r))
    assert np.array_equal(Ad[3:, :3], skew(r))
    assert np.array_equal(Ad[:3, 3:], np.zeros((3, 3)))


def test_adjoint_is_a_homomorphism(rng: np.random.Generator) -> None:
    for _ in range(50):
        C1, C2 = _random_pose(rng), _random_pose(rng)
        assert np.abs(adjoint(pose_compose(C1, C2)) - adjoint(C1) @ adjoint(C2)).max() < 1e-12


def test_adjoint_inverse_inverts(rng: np.random.Generator) -> None:
    for _ in range(20):
        C = _random_pose(rng)
        assert np.abs(adjoint_inverse(C) @ adjoint(C) - np.eye(6)).max() < 1e-12
        assert np.abs(adjoint_inverse(C) - adjoint(pose_inverse(C))).max() < 1e-13


def test_ad_of_a_screw_annihilates_it(rng: np.random.Generator) -> None:
    for _ in range(20):
        X = rng.normal(size=6)
        assert np.abs(ad(X) @ X).max() < 1e-14


def test_ad_of_z_axis_has_equal_diagonal_blocks() -> None:
    A = ad(np.array([0.0, 0.0, 1.0, 0.0, 0.0, 0.0]))
    assert np.array_equal(A[:3, :3], skew(np.array([0.0, 0.0, 1.0])))
    assert np.array_equal(A[3:, 3:], A[:3, :3])
    assert np.array_equal(A[3:, :3], np.zeros((3, 3)))


def test_ad_is_the_matrix_commutator(rng: np.random.Generator) -> None:
    for _ in range(50):
        X, Y = rng.normal(size=6), rng.normal(size=6)
        bracket = _hat(X) @ _hat(Y) - _hat(Y) @ _hat(X)
        assert np.abs(ad(X) @ Y - _vee(bracket)).max() < 1e-13


# --------------------------------------------------------------------------- #
# Composition
# --------------------------------------------------------------------------- #
def test_identity_is_neutral(rng: np.random.Generator) -> None:
    C = _random_pose(rng)
    D = pose_compose(Pose.identity(), C)
    assert np.array_equal(D.R, C.R)
    assert np.array_equal(D.r, C.r)


def test_inverse_of_translation_negates_it() -> None:
    C = pose_inverse(Pose.from_translation(np.array([1.0, -2.0, 0.5])))
    assert np.array_equal(C.R, np.eye(3))
    assert np.allclose(C.r, [-1.0, 2.0, -0.5])


def test_inverse_round_trip(rng: np.random.Generator) -> None:
    for _ in range(50):
        C = _random_pose(rng)
        E = pose_compose(pose_inverse(C), C)
        assert np.abs(E.homogeneous() - np.eye(4)).max() < 1e-12


def test_joint_screw_rejects_non_unit_axis() -> None:
    with pytest.raises(AxisNormError):
        JointScrew(np.array([0.0, 0.0, 2.0]), np.zeros(3))


def test_prismatic_screw_must_have_zero_rotation() -> None:
    with pytest.raises(AxisNormError):
        JointScrew(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]), JointKind.PRISMATIC, None)


def test_helical_point_is_recovered() -> None:
    X = joint_screw_from_axis([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], JointKind.HELICAL, 0.5)
    assert np.allclose(X.point, [1.0, 0.0, 0.0])
