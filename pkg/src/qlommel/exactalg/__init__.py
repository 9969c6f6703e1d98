"""Exact algebra: Laurent polynomials, rational functions, truncated series."""

from .poly import Poly, ZERO, ONE, var, seqvar, encode, decode, ExponentOverflow
from .ratfunc import RatFunc, ratfunc_normalize, limit_at_alpha_infinity, rf, rvar, RZERO, RONE
from .series import Series, series_div, series_mul

__all__ = [
    "Poly", "ZERO", "ONE", "var", "seqvar", "encode", "decode", "ExponentOverflow",
    "RatFunc", "ratfunc_normalize", "limit_at_alpha_infinity", "rf", "rvar", "RZERO", "RONE",
    "Series", "series_div", "series_mul",
]
