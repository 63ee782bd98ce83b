"""Exact and floating-point distributions of discrete-time pure birth processes."""

__version__ = "0.1.0"
