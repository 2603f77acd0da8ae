"""Parallel token swapping: approximation algorithms, lower bounds and an exact oracle."""

__version__ = "0.1.0"
