"""Chain models: inertias, screws, file loading and the canonical dump."""

import json
from pathlib import Path

import numpy as np
import pytest

from screwdyn.chain import (
    BodyInertia,
    ChainModel,
    ExternalWrenchTrajectory,
    describe,
    dump_model,
    end_effector_wrench,
    joint_screw_from_axis,
    load_model,
    shipped_model_path,
    spatial_inertia,
)
from screwdyn.errors import AxisNormError, DimensionError, ModelValidationError
from screwdyn.liegroup import Wrench
from screwdyn.models.enums import JointKind
from screwdyn.models.run_config import WrenchSpec


def _two_r_doc() -> dict:
    return json.loads(shipped_model_path("two_r").read_text(encoding="utf-8"))


def _write(tmp_path: Path, doc: dict, name: str = "robot.json") -> Path:
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


# --------------------------------------------------------------------------- #
# Spatial inertia
# --------------------------------------------------------------------------- #
def test_inertia_at_frame_origin_is_block_identity() -> None:
    M = spatial_inertia(BodyInertia(1.0, np.zeros(3), np.eye(3)))
    assert np.array_equal(M, np.eye(6))


def test_steiner_shift_of_point_mass() -> None:
    c = np.array([1.0, 0.0, 0.0])
    M = spatial_inertia(BodyInertia(2.0, c, np.zeros((3, 3))))
    assert np.allclose(M[:3, :3], 2.0 * np.diag([0.0, 1.0, 1.0]))
    assert np.allclose(M[:3, 3:], 2.0 * np.array([[0, 0, 0], [0, 0, -1], [0, 1, 0]]))
    assert np.allclose(M[3:, :3], -M[:3, 3:])
    assert np.allclose(M[3:, 3:], 2.0 * np.eye(3))


def test_kuka_link_one_mass_sits_on_the_translational_diagonal(kuka: ChainModel) -> None:
    M1 = kuka.spatial_inertias()[0]
    assert M1[3, 3] == pytest.approx(3.94781)
    assert np.allclose(M1, M1.T)


def test_body_rejects_non_positive_mass() -> None:
    with pytest.raises(ModelValidationError) as exc:
        BodyInertia(0.0, np.zeros(3), np.eye(3))
    assert exc.value.path == "mass"


# --------------------------------------------------------------------------- #
# Joint screws
# --------------------------------------------------------------------------- #
@pytest.mark.parametrize(
    ("e", "x", "kind", "h", "expected"),
    [
        ([0, 0, 1], [0, 0, 0], JointKind.REVOLUTE, None, [0, 0, 1, 0, 0, 0]),
        ([1, 0, 0], [0, 0, 0], JointKind.PRISMATIC, None, [0, 0, 0, 1, 0, 0]),
        ([0, 0, 1], [1, 0, 0], JointKind.HELICAL, 0.5, [0, 0, 1, 0, -1, 0.5]),
    ],
)
def test_joint_screw_from_axis(e: list, x: list, kind: JointKind, h: float | None, expected: list) -> None:
    assert np.allclose(joint_screw_from_axis(e, x, kind, h).vector, expected)


def test_joint_screw_from_axis_rejects_non_unit_axis() -> None:
    with pytest.raises(AxisNormError):
        joint_screw_from_axis([0.0, 0.0, 2.0])


# --------------------------------------------------------------------------- #
# Shipped models
# --------------------------------------------------------------------------- #
def test_two_r_file(two_r: ChainModel) -> None:
    assert two_r.n == 2
    assert np.array_equal(two_r.B[1].r, [1.0, 0.0, 0.0])
    assert np.array_equal(two_r.gravity, [0.0, -9.81, 0.0])


def test_kuka_file(kuka: ChainModel) -> None:
    assert kuka.n == 7
    for X in kuka.screws:
        assert np.array_equal(X.vector, [0, 0, 1, 0, 0, 0])
    assert all(B.is_valid() for B in kuka.B)


def test_mass_operator_is_block_diagonal(kuka: ChainModel) -> None:
    M = kuka.Msys
    assert M.shape == (42, 42)
    assert np.array_equal(M[:6, 6:], np.zeros((6, 36)))
    assert np.allclose(M, M.T)


def test_describe(kuka: ChainModel) -> None:
    d = describe(kuka)
    assert d["n"] == 7
    assert d["kinds"] == ["revolute"] * 7
    assert d["gravity"] == [0.0, 0.0, -9.81]


def test_unknown_shipped_model() -> None:
    with pytest.raises(ModelValidationError):
        shipped_model_path("scara")


# --------------------------------------------------------------------------- #
# Loading errors
# --------------------------------------------------------------------------- #
def test_negative_mass_names_the_body(tmp_path: Path) -> None:
    doc = _two_r_doc()
    doc["bodies"][0]["mass"] = -1.0
    with pytest.raises(ModelValidationError) as exc:
        load_model(_write(tmp_path, doc))
    assert exc.value.path == "bodies[0].mass"


def test_non_unit_axis_names_the_joint(tmp_path: Path) -> None:
    doc = _two_r_doc()
    doc["joints"][1]["axis"] = [0.0, 0.0, 1.5]
    with pytest.raises(ModelValidationError) as exc:
        load_model(_write(tmp_path, doc))
    assert exc.value.path == "joints[1].axis"


def test_improper_rotation_is_rejected(tmp_path: Path) -> None:
    doc = _two_r_doc()
    doc["joints"][1]["B"]["R"] = [1, 0, 0, 0, 1, 0, 0, 0, -1]
    with pytest.raises(ModelValidationError) as exc:
        load_model(_write(tmp_path, doc))
    assert exc.value.path == "joints[1].B.R"


def test_joint_body_count_mismatch(tmp_path: Path) -> None:
    doc = _two_r_doc()
    doc["bodies"].pop()
    with pytest.raises(ModelValidationError):
        load_model(_write(tmp_path, doc))


def test_helical_joint_needs_pitch(tmp_path: Path) -> None:
    doc = _two_r_doc()
    doc["joints"][0]["kind"] = "helical"
    with pytest.raises(ModelValidationError):
        load_model(_write(tmp_path, doc))


def test_dense_limit_warning(caplog: pytest.LogCaptureFixture, pendulum: ChainModel) -> None:
    n = 17
    ChainModel(
        name="long",
        screws=pendulum.screws * n,
        B=pendulum.B * n,
        bodies=pendulum.bodies * n,
        gravity=pendulum.gravity,
    )
    assert "dense-storage" in caplog.text


# --------------------------------------------------------------------------- #
# Canonical dump
# --------------------------------------------------------------------------- #
@pytest.mark.parametrize("name", ["two_r", "kuka_iiwa14", "pendulum"])
def test_dump_is_a_fixed_point(tmp_path: Path, name: str) -> None:
    model = load_model(shipped_model_path(name))
    text = dump_model(model)
    path = tmp_path / f"{name}.json"
    path.write_text(text, encoding="utf-8")
    again = load_model(path)

    assert dump_model(again) == text
    assert np.array_equal(again.Msys, model.Msys)
    for X, Y in zip(model.screws, again.screws, strict=True):
        assert np.array_equal(X.vector, Y.vector)
    for B, C in zip(model.B, again.B, strict=True):
        assert np.array_equal(B.R, C.R)
        assert np.array_equal(B.r, C.r)


def test_dump_sorts_keys(two_r: ChainModel) -> None:
    text = dump_model(two_r)
    data = json.loads(text)
    assert text.endswith("}\n")
    assert list(data) == sorted(data)
    for joint in data["joints"]:
        assert list(joint) == sorted(joint)
    for body in data["bodies"]:
        assert list(body) == sorted(body)


def test_helical_model_round_trips(tmp_path: Path) -> None:
    doc = _two_r_doc()
    doc["joints"][0].update({"kind": "helical", "pitch": 0.25, "point": [0.5, 0.0, 0.0]})
    model = load_model(_write(tmp_path, doc))
    again = load_model(_write(tmp_path, json.loads(dump_model(model)), "again.json"))
    assert np.allclose(again.screws[0].vector, model.screws[0].vector, atol=1e-15)
    assert again.screws[0].pitch == 0.25


# --------------------------------------------------------------------------- #
# External wrenches
# --------------------------------------------------------------------------- #
def test_end_effector_wrench_zero_fills() -> None:
    W = end_effector_wrench(3, Wrench(np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, -5.0])))
    assert W.shape == (18,)
    assert np.array_equal(W[:12], np.zeros(12))
    assert np.array_equal(W[12:], [0, 0, 1, 0, 0, -5])


def test_zero_wrench() -> None:
    W, Wd, Wdd = ExternalWrenchTrajectory.zero(2).evaluate(1.0)
    assert not W.any() and not Wd.any() and not Wdd.any()


def test_constant_wrench_has_no_rate() -> None:
    traj = ExternalWrenchTrajectory.constant(np.arange(12.0))
    W, Wd, Wdd = traj.evaluate(3.0)
    assert traj.n == 2
    assert np.array_equal(W, np.arange(12.0))
    assert not Wd.any() and not Wdd.any()


def test_constant_wrench_needs_whole_bodies() -> None:
    with pytest.raises(DimensionError):
        ExternalWrenchTrajectory.constant(np.zeros(7))


def test_sinusoidal_wrench_derivatives() -> None:
    spec = WrenchSpec(body=1, offset=[0, 0, 0, 0, 0, -5], amplitude=[1, 0, 0, 2, 0, 0], frequency=2.0, phase=0.3)
    traj = ExternalWrenchTrajectory.from_spec(spec, 2)
    t, h = 0.4, 1e-5
    W, Wd, Wdd = traj.evaluate(t)
    assert np.array_equal(W[6:], np.zeros(6))
    assert W[5] == pytest.approx(-5.0)
    assert np.allclose((traj.evaluate(t + h)[0] - traj.evaluate(t - h)[0]) / (2 * h), Wd, atol=1e-8)
    assert np.allclose((traj.evaluate(t + h)[1] - traj.evaluate(t - h)[1]) / (2 * h), Wdd, atol=1e-8)


def test_second_wrench_derivative_needs_the_first() -> None:
    with pytest.raises(DimensionError):
        ExternalWrenchTrajectory(1, lambda t: np.zeros(6), None, lambda t: np.zeros(6))
