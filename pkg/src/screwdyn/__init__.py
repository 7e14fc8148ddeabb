"""screwdyn: closed-form inverse dynamics of serial chains, with Q̇ and Q̈."""

__version__ = "0.1.0"
