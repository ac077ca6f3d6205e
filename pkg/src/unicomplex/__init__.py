"""Exact-arithmetic combinatorics of the universal complexes of unimodular
subsets over prime fields and over the integers."""

__version__ = "0.1.0"
