"""Exact verification of Lie conformal and left-symmetric conformal algebras
of finite rank over C[del]."""

__version__ = "0.1.0"
