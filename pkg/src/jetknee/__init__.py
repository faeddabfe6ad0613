"""Jet single-time Lagrange geometry of polynomial ODE systems, with the
Grood-Suntay knee case study."""

__version__ = "0.1.0"
