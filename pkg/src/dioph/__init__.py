"""Certified computations around ||n alpha - gamma||: continued fractions, Ostrowski
expansions, counting, reciprocal sums and explicit constructions."""

__version__ = "0.1.0"
