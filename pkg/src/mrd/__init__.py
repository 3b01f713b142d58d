"""Exact arithmetic for Riordan arrays, multiple Riordan arrays and their compressions."""
from .errors import MRDError
from .gfexpr import evaluate, parse
from .matrix import RationalMatrix
from .multiriordan import MultiRiordanSpec
from .riordan import RiordanSpec
from .series import GradedSeries, Series

__all__ = [
    "GradedSeries",
    "MRDError",
    "MultiRiordanSpec",
    "RationalMatrix",
    "RiordanSpec",
    "Series",
    "evaluate",
    "parse",
]
__version__ = "0.1.0"
