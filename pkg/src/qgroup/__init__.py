"""Computational checks for a family of Y-groups and their 3-transposition quotients."""

__version__ = "0.1.0"
