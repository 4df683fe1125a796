"""Exact certification of cuspidal quintic surfaces with a free Z5 action."""

__version__ = "0.1.0"
