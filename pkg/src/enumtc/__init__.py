"""Exact-arithmetic verification of genus bounds for enumerative problems."""

__version__ = "0.1.0"
