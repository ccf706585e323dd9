"""Permutation binomials a x + x^(r(q-1)+1) over F_{q^2}."""

__version__ = "0.1.0"
