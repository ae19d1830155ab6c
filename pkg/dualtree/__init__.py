"""Exact computation with automata over changing alphabets."""

__version__ = "0.1.0"
