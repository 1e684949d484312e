"""Homotopy of digraphs as exact finite algorithms."""

__version__ = "0.1.0"
