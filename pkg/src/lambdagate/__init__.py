"""Symmetry-protected Lambda-system holonomic gates: simulation and QEC toolkit."""

__version__ = "0.1.0"
