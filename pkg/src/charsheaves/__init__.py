"""Combinatorial models of character-sheaf block decompositions."""

__version__ = "0.1.0"
