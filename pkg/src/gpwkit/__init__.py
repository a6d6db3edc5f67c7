"""Graphical password toolkit."""

__version__ = "0.1.0"
