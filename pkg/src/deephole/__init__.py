"""Exact-arithmetic workbench for even lattices: enumeration, isometries,
glue constructions, deep holes of the 24-dimensional unimodular lattices."""

__version__ = "0.1.0"
