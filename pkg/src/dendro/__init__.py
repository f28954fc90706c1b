"""Finite combinatorics of dendroidal sets and coloured operads."""

__version__ = "0.1.0"
