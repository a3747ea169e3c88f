"""Stable cut problems: independence covering families, separators, and solvers."""

__version__ = "0.1.0"
