"""Exact-arithmetic workbench for simply colored coalgebras."""
__version__ = "1.0.0"
