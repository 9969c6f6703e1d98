"""Truncated power series in one variable with rational-function coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Mapping

from .poly import Poly, VAR_INDEX
from .ratfunc import RatFunc, RONE, RZERO


def _rf(x) -> RatFunc:
    return RatFunc.coerce(x)


class Series:
    """``sum_{i<=order} coeffs[i] * var**i``, known exactly through ``order``."""

    __slots__ = ("var", "order", "coeffs")

    def __init__(self, var: str, order: int, coeffs: Iterable = ()):
        if order < 0:
            raise ValueError("series order must be nonnegative")
        if var not in VAR_INDEX:
            raise ValueError(f"unknown variable {var!r}")
        cs = [_rf(c) for c in coeffs][: order + 1]
        cs.extend(RZERO for _ in range(order + 1 - len(cs)))
        self.var = var
        self.order = order
        self.coeffs: List[RatFunc] = cs

    # construction -----------------------------------------------------------
    @staticmethod
    def const(value, var: str, order: int) -> "Series":
        return Series(var, order, [_rf(value)])

    @staticmethod
    def monomial(coeff, power: int, var: str, order: int) -> "Series":
        cs = [RZERO] * (order + 1)
        if power <= order:
            cs[power] = _rf(coeff)
        return Series(var, order, cs)

    @staticmethod
    def from_ratfunc(r, var: str, order: int) -> "Series":
        """Expand a rational function as a power series in ``var``."""
        r = _rf(r)
        if r.is_zero():
            return Series(var, order)
        num = r.num.coefficients_in(var)
        low = min(num)
        if low < 0:
            raise ValueError("negative-valuation")
        cs = [RZERO] * (order + 1)
        for e, p in num.items():
            if e <= order:
                cs[e] = RatFunc.from_poly(p)
        out = Series(var, order, cs) * (Fraction(1) / r.scalar)
        for f, m in r.den:
            parts = f.coefficients_in(var)
            if min(parts) < 0 or 0 not in parts:
                raise ValueError("non-invertible-series")
            g = Series(var, order, [RatFunc.from_poly(parts.get(i, Poly())) for i in range(order + 1)])
            inv = g.inverse()
            for _ in range(m):
                out = out * inv
        return out

    @staticmethod
    def from_poly(p: Poly, var: str, order: int) -> "Series":
        return Series.from_ratfunc(RatFunc.from_poly(p), var, order)

    # access -------------------------------------------------------------------
    def __getitem__(self, i: int) -> RatFunc:
        if i < 0:
            return RZERO
        if i > self.order:
            raise IndexError(f"coefficient {i} beyond truncation order {self.order}")
        return self.coeffs[i]

    def __len__(self) -> int:
        return self.order + 1

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return None

    def truncate(self, order: int) -> "Series":
        return Series(self.var, min(order, self.order), self.coeffs)

    # arithmetic -----------------------------------------------------------------
    def _check(self, other: "Series") -> None:
        if other.var != self.var:
            raise ValueError(f"series variables differ: {self.var} vs {other.var}")

    def __add__(self, other) -> "Series":
        if isinstance(other, Series):
            self._check(other)
            n = min(self.order, other.order)
            return Series(self.var, n, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])
        cs = list(self.coeffs)
        cs[0] = cs[0] + _rf(other)
        return Series(self.var, self.order, cs)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series(self.var, self.order, [-c for c in self.coeffs])

    def __sub__(self, other) -> "Series":
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def __mul__(self, other) -> "Series":
        if isinstance(other, Series):
            self._check(other)
            n = min(self.order, other.order)
            a, b = self.coeffs, other.coeffs
            nz_a = [i for i in range(n + 1) if not a[i].is_zero()]
            nz_b = [j for j in range(n + 1) if not b[j].is_zero()]
            cs = [RZERO] * (n + 1)
            for i in nz_a:
                for j in nz_b:
                    if i + j > n:
                        break
                    cs[i + j] = cs[i + j] + a[i] * b[j]
            return Series(self.var, n, cs)
        r = _rf(other)
        return Series(self.var, self.order, [c * r for c in self.coeffs])

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        g0 = self.coeffs[0]
        if g0.is_zero():
            raise ZeroDivisionError("non-invertible-series")
        inv0 = g0.inverse()
        n = self.order
        h = [inv0]
        nz = [k for k in range(1, n + 1) if not self.coeffs[k].is_zero()]
        for m in range(1, n + 1):
            acc = RZERO
            for k in nz:
                if k > m:
                    break
                acc = acc + self.coeffs[k] * h[m - k]
            h.append(-(acc * inv0))
        return Series(self.var, n, h)

    def __truediv__(self, other) -> "Series":
        if isinstance(other, Series):
            return series_div(self, other)
        return self * _rf(other).inverse()

    def __rtruediv__(self, other) -> "Series":
        return Series.const(other, self.var, self.order) / self

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            return self.inverse() ** (-n)
        out = Series.const(RONE, self.var, self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def shift(self, k: int) -> "Series":
        """Multiply by ``var**k``; a negative ``k`` divides by a factor the series must contain."""
        if k >= 0:
            return Series(self.var, self.order + k, [RZERO] * k + self.coeffs)
        if any(not c.is_zero() for c in self.coeffs[:-k]):
            raise ValueError("series not divisible by that power")
        if self.order + k < 0:
            raise ValueError("truncation order exhausted")
        return Series(self.var, self.order + k, self.coeffs[-k:])

    def subs_monomial(self, coeff, power: int) -> "Series":
        """Substitute ``var -> coeff * var**power`` (power >= 1)."""
        if power < 1:
            raise ValueError("power must be positive")
        k = _rf(coeff)
        order = power * (self.order + 1) - 1
        cs = [RZERO] * (order + 1)
        kp = RONE
        for i, c in enumerate(self.coeffs):
            cs[i * power] = c * kp
            kp = kp * k
        return Series(self.var, order, cs)

    def substitute(self, rules: Mapping[str, "Poly | RatFunc"]) -> "Series":
        if self.var in rules:
            raise ValueError("use subs_monomial for the series variable")
        return Series(self.var, self.order, [c.substitute(rules) for c in self.coeffs])

    def map_coeffs(self, fn) -> "Series":
        return Series(self.var, self.order, [fn(c) for c in self.coeffs])

    # comparison -------------------------------------------------------------------
    def first_difference(self, other: "Series") -> int | None:
        """Lowest index where the two series disagree, or None through the common order."""
        self._check(other)
        for i in range(min(self.order, other.order) + 1):
            if not self.coeffs[i].cross_equal(other.coeffs[i]):
                return i
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.first_difference(other) is None

    __hash__ = None

    def pretty(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            body = c.pretty()
            if mono:
                body = mono if body == "1" else f"({body})*{mono}"
            parts.append(body)
        parts.append(f"O({self.var}^{self.order + 1})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Series({self.pretty()})"


def series_div(f: Series, g: Series) -> Series:
    """``h`` with ``f = g*h`` through order ``min(order(f), order(g))``."""
    f._check(g)
    n = min(f.order, g.order)
    if g.coeffs[0].is_zero():
        raise ZeroDivisionError("non-invertible-series")
    inv0 = g.coeffs[0].inverse()
    nz = [k for k in range(1, n + 1) if not g.coeffs[k].is_zero()]
    h: List[RatFunc] = []
    for m in range(n + 1):
        acc = f.coeffs[m]
        for k in nz:
            if k > m:
                break
            acc = acc - g.coeffs[k] * h[m - k]
        h.append(acc * inv0)
    return Series(f.var, n, h)


def series_mul(f: Series, g: Series) -> Series:
    return f * g
