"""Exact computations around braid orbits on conjugacy-class tuples."""

__version__ = "0.1.0"
