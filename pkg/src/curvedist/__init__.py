"""Curve-graph computations on surfaces: intersection numbers, distances,
tight multigeodesics, pulse combinatorics and explicit search bounds."""

__version__ = "0.1.0"
