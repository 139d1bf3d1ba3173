"""Jet schemes, level-0 vertex Poisson structures and C2/lisse computations."""

from .arith import (
    DEFAULT_ORDER,
    Monomial,
    MonomialOrder,
    ParseError,
    Polynomial,
    VarId,
    parse,
    serialize,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_ORDER",
    "Monomial",
    "MonomialOrder",
    "ParseError",
    "Polynomial",
    "VarId",
    "parse",
    "serialize",
]
