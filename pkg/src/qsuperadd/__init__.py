"""Finite-dimensional quantum channels, entropy functionals and output-entropy checks."""

__version__ = "0.1.0"
