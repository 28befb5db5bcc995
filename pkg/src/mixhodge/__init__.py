"""Exact computations for mixed Hodge structures and rational homotopy."""

__version__ = "0.1.0"
