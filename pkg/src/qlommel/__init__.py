"""Exact computation with q-Lommel polynomials, their moments and path models."""

__version__ = "0.1.0"
