"""Convolution powers of complex lattice functions and their attractors."""

__version__ = "0.1.0"
