"""Weierstrass divisors, cycles and flat limits on plane curves, computed exactly."""

__version__ = "0.1.0"
