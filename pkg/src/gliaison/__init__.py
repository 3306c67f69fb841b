"""Gorenstein liaison computations over finite prime fields."""

__version__ = "0.1.0"
