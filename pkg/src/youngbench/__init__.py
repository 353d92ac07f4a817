"""Numerical workbench for Young's singular-value inequality and its equality case."""

__version__ = "0.1.0"
