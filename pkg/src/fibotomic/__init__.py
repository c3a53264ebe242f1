"""Exact arithmetic for Fibonacci, fibotomic and cyclotomic polynomials."""

from .families import cyclotomic, fibonacci, fibotomic
from .polycore import GaussPoly, IntPoly, ModPoly, RatPoly

__version__ = "0.1.0"

__all__ = [
    "GaussPoly",
    "IntPoly",
    "ModPoly",
    "RatPoly",
    "cyclotomic",
    "fibonacci",
    "fibotomic",
]
