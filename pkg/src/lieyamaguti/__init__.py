"""Exact computations for Lie-Yamaguti algebras and relative Rota-Baxter operators."""
__version__ = "0.1.0"
