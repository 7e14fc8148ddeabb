"""Enumeration types shared by the file schemas and the numeric core."""

import sys

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:  # Python 3.10 compatibility shim matching enum.StrEnum's str()/format()
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)

        def __format__(self, format_spec: str) -> str:
            return str(self.value).__format__(format_spec)


class JointKind(StrEnum):
    """1-DOF lower-pair joint type."""

    REVOLUTE = "revolute"
    PRISMATIC = "prismatic"
    HELICAL = "helical"


class FDScheme(StrEnum):
    """Central finite-difference stencil."""

    CENTRAL_2 = "central-2"  # (f(t+h) − f(t−h)) / 2h
    CENTRAL_4 = "central-4"  # five-point, O(h⁴)
