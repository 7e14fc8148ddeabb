"""Shared fixtures: the shipped models and the 2R regression state."""

import numpy as np
import pytest

from screwdyn.chain import ChainModel, load_model, shipped_model_path
from screwdyn.kinematics import MotionState


@pytest.fixture(scope="session")
def two_r() -> ChainModel:
    return load_model(shipped_model_path("two_r"))


@pytest.fixture(scope="session")
def kuka() -> ChainModel:
    return load_model(shipped_model_path("kuka_iiwa14"))


@pytest.fixture(scope="session")
def pendulum() -> ChainModel:
    return load_model(shipped_model_path("pendulum"))


@pytest.fixture
def regression_state() -> MotionState:
    """q, q̇, q̈, q⃛, q⁗ used for the 2R regression values."""
    return MotionState.from_arrays(
        [0.3, -0.2],
        [0.5, 1.1],
        [-0.7, 0.4],
        [0.9, -1.3],
        [0.2, 0.8],
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
