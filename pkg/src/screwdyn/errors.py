"""Exception types raised by the library.

All of them subclass ``ValueError`` as well as ``ScrewdynError`` so callers
that only care about "bad input" can keep catching the builtin.
"""

from __future__ import annotations


class ScrewdynError(Exception):
    """Base class for every error the library raises on purpose."""


class AxisNormError(ScrewdynError, ValueError):
    """A joint or rotation axis is not a unit vector."""

    def __init__(self, norm: float, tolerance: float) -> None:
        super().__init__(f"axis must be a unit vector (|e| = {norm:.12g}, tolerance {tolerance:g})")
        self.norm = norm
        self.tolerance = tolerance


class ModelValidationError(ScrewdynError, ValueError):
    """A chain model violates one of its invariants.

    ``path`` names the offending field the way it appears in the model file,
    e.g. ``bodies[0].mass`` or ``joints[3].B.R``.
    """

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
        self.message = message


class MissingDerivativeError(ScrewdynError, ValueError):
    """A motion derivative needed for the requested order is absent."""

    def __init__(self, name: str, order: int) -> None:
        super().__init__(f"motion state has no '{name}', needed for order {order}")
        self.name = name
        self.order = order


class DimensionError(ScrewdynError, ValueError):
    """A vector or matrix has the wrong size for the chain."""


class ConfigError(ScrewdynError, ValueError):
    """A run configuration or trajectory file cannot be used."""
