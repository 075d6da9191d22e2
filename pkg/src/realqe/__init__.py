"""Exact one-block real quantifier elimination via parametric Hermite matrices."""

from .exactalg import Poly, PMatrix, Rat, RatFunc, VarSpace

__all__ = ["Poly", "PMatrix", "Rat", "RatFunc", "VarSpace"]
