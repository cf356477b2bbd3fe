"""Iterated centralizers and envelope chains in permutation groups."""

__version__ = "0.1.0"
