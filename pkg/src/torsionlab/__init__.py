"""Torsion of elliptic curves y^2 = x(x + alpha)(x + beta) over imaginary
quadratic fields, their quadratic twists and growth in quadratic extensions."""

__version__ = "0.1.0"
