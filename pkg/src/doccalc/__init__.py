"""Discrete ordered calculus: symbolic non-commutative engine and simulators."""

__version__ = "0.1.0"
