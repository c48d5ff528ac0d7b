"""Exact combinatorics for bordifications of loop-group symmetric spaces."""

from .errors import DomainError, SchemaError
from .lognum import SIEGEL_T0, LogNumber, PositiveReal
from .rootdata import CartanVector, Functional, RootDatum, classify_gcm, pair

__all__ = [
    "CartanVector",
    "DomainError",
    "Functional",
    "LogNumber",
    "PositiveReal",
    "RootDatum",
    "SIEGEL_T0",
    "SchemaError",
    "classify_gcm",
    "pair",
]
__version__ = "0.1.0"
