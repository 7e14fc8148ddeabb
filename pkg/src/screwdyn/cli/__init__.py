"""screwdyn command-line interface."""

from screwdyn import __version__

__all__ = ["__version__"]
