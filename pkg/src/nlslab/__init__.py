"""Numerical laboratory for modified scattering of the critical NLS
with long-range potentials."""

__version__ = "0.1.0"
