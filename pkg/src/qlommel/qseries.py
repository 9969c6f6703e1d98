"""q-Pochhammer symbols, Gaussian binomials and truncated hypergeometric series."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .exactalg import ONE, ZERO, Poly, RatFunc, Series, var
from .exactalg.ratfunc import RONE

Q = var("q")
QINV = Poly.var("q", -1)


def _base(base) -> Poly:
    if base is None or base == "q":
        return Q
    if base in ("1/q", "q^-1"):
        return QINV
    if isinstance(base, Poly) and base.is_monomial():
        return base
    raise ValueError(f"unsupported base {base!r}")


def qpochhammer(arg: Poly, n: int, base=None) -> Poly:
    """``(arg; base)_n = prod_{i<n} (1 - arg*base^i)``."""
    if n < 0:
        raise ValueError("qpochhammer length must be nonnegative")
    b = _base(base)
    out = ONE
    x = Poly._coerce(arg)
    for _ in range(n):
        out = out * (ONE - x)
        x = x * b
    return out


def qpoch_multi(args: Sequence[Poly], n: int, base=None) -> Poly:
    """``(a1, a2, ...; base)_n``."""
    out = ONE
    for a in args:
        out = out * qpochhammer(a, n, base)
    return out


def qpoch_ratfunc(args: Sequence[Poly], n: int, base=None) -> RatFunc:
    """``(a1, a2, ...; base)_n`` as a factored rational function (for use as a denominator)."""
    b = _base(base)
    out = RONE
    for a in args:
        x = Poly._coerce(a)
        for _ in range(n):
            out = out * RatFunc.from_poly(ONE - x)
            x = x * b
    return out


@lru_cache(maxsize=None)
def _gauss_cached(n: int, k: int, bkey: str) -> Poly:
    b = QINV if bkey == "1/q" else Q
    num = qpochhammer(b, n, b)
    den = qpochhammer(b, k, b) * qpochhammer(b, n - k, b)
    out = num.divexact(den)
    if out is None:
        raise ArithmeticError("Gaussian binomial division was not exact")
    return out


def gauss_binomial(n: int, k: int, base=None) -> Poly:
    """Gaussian binomial ``[n, k]`` in base q or 1/q; zero outside ``0 <= k <= n``."""
    if k < 0 or k > n or n < 0:
        return ZERO
    b = _base(base)
    key = "1/q" if b == QINV else "q"
    if b not in (Q, QINV):
        raise ValueError("gauss_binomial supports base q or 1/q")
    return _gauss_cached(n, k, key)


def hypergeometric_term(upper: Sequence[Poly], lower: Sequence[Poly], n: int,
                        base=None) -> RatFunc:
    """Coefficient of ``z^n`` in ``r phi s(upper; lower; base, z)``, built directly."""
    b = _base(base)
    r, s = len(upper), len(lower)
    den = qpoch_ratfunc([b], n, b) * qpoch_ratfunc(list(lower), n, b)
    if den.is_zero():
        raise ZeroDivisionError("singular-parameter")
    num = RatFunc.from_poly(qpoch_multi(upper, n, b))
    extra = 1 + s - r
    if extra:
        sign = (-1) ** (n * extra)
        num = num * RatFunc.from_poly(b ** (comb(n, 2) * extra)) * sign
    return num / den


def basic_hypergeometric_truncated(upper: Sequence[Poly], lower: Sequence[Poly],
                                   argument, order: int, var_name: str = "t",
                                   power: int = 1, base=None) -> Series:
    """Truncated ``r phi s(upper; lower; base, argument * var^power)``.

    Coefficients are produced by the term-ratio recursion; ``power`` lets
    the argument be a monomial such as ``-t^2``.
    """
    b = _base(base)
    upper = [Poly._coerce(u) for u in upper]
    lower = [Poly._coerce(l) for l in lower]
    arg = RatFunc.coerce(argument)
    r, s = len(upper), len(lower)
    extra = 1 + s - r
    cs = [RatFunc(ZERO)] * (order + 1)
    term = RONE
    n = 0
    while n * power <= order:
        cs[n * power] = term
        if arg.is_zero():
            break
        # ratio t_{n+1}/t_n
        num = RONE
        for u in upper:
            num = num * RatFunc.from_poly(ONE - u * b ** n)
        den = RatFunc.from_poly(ONE - b ** (n + 1))
        for l in lower:
            f = ONE - l * b ** n
            if f.is_zero():
                raise ZeroDivisionError("singular-parameter")
            den = den * RatFunc.from_poly(f)
        if extra:
            num = num * RatFunc.from_poly(b ** (n * extra)) * ((-1) ** extra)
        term = term * num / den * arg
        n += 1
    return Series(var_name, order, cs)


def bessel_like_series(which: str, order: int, param: Poly | None = None,
                       var_name: str = "t") -> Series:
    """Hypergeometric factor of a Bessel or q-Bessel function, as a series in ``t = z^2``.

    ``classical``: ``sum (-t/4)^n / (n! (param+1)_n)`` with ``param`` a polynomial in nu.
    ``first_q``:   ``2phi1(0, 0; param; q, -t/4)``, where ``param`` plays ``q^(nu+1)``.
    ``third_q``:   ``1phi1(0; param; q, q t)``, likewise.
    """
    if which == "classical":
        nu = var("nu") if param is None else Poly._coerce(param)
        cs = []
        term = RONE
        for n in range(order + 1):
            cs.append(term)
            term = term * Fraction(-1, 4 * (n + 1)) / RatFunc.from_poly(nu + (n + 1))
        return Series(var_name, order, cs)
    c = var("c") if param is None else Poly._coerce(param)
    if which == "first_q":
        return basic_hypergeometric_truncated([ZERO, ZERO], [c], Fraction(-1, 4), order, var_name)
    if which == "third_q":
        return basic_hypergeometric_truncated([ZERO], [c], Q, order, var_name)
    raise ValueError(f"unknown Bessel kind {which!r}")
