"""Exact computations with cycle sets, their germ groups and Hecke algebras."""

__version__ = "0.1.0"
