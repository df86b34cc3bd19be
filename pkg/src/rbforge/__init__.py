"""Rota-Baxter operators, skew braces and Yang-Baxter solutions on finite groups."""

__version__ = "0.1.0"
