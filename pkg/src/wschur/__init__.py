"""Weighted (factorial) Schur functions and fixed-point restriction data of
weighted Grassmannians, computed exactly."""

__version__ = "0.1.0"
