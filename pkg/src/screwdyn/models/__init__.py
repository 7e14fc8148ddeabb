"""File schemas (pydantic) for screwdyn."""

from .chain_file import BodySpec, ChainFile, JointSpec, PoseSpec, inertia_tensor
from .enums import FDScheme, JointKind
from .run_config import (
    CosineTrajectorySpec,
    CsvTrajectorySpec,
    RunConfig,
    TrajectorySpec,
    WrenchSpec,
)

__all__ = [
    # Model file
    "BodySpec",
    "ChainFile",
    "JointSpec",
    "PoseSpec",
    "inertia_tensor",
    # Run config
    "CosineTrajectorySpec",
    "CsvTrajectorySpec",
    "RunConfig",
    "TrajectorySpec",
    "WrenchSpec",
    # Enums
    "FDScheme",
    "JointKind",
]
