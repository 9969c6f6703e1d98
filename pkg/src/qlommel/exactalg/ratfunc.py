"""Rational functions kept as numerator over a factored denominator.

The denominator is ``scalar * prod(f**m)`` where each ``f`` is a primitive
polynomial (integer coprime coefficients, no monomial content, fixed sign).
Monomials never sit in the denominator: the numerator is a Laurent
polynomial, so they are absorbed there.  No multivariate GCD is run; common
factors are found by trial division against the stored factors only, which
is enough for the products of ``(1 - u q^k)`` that occur throughout.
Equality is decided by clearing denominators.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .poly import ONE, ONE_KEY, ZERO, Number, Poly, decode, encode

Factors = Tuple[Tuple[Poly, int], ...]


def _sort_factors(fs: Mapping[Poly, int]) -> Factors:
    items = [(f, m) for f, m in fs.items() if m]
    items.sort(key=lambda fm: (len(fm[0].terms), fm[0].canonical()))
    return tuple(items)


class RatFunc:
    __slots__ = ("num", "den", "scalar")

    def __init__(self, num: Poly, den: Factors = (), scalar: Fraction = Fraction(1)):
        self.num = num
        self.den = den
        self.scalar = scalar

    # construction -------------------------------------------------------
    @staticmethod
    def from_poly(p: Poly) -> "RatFunc":
        if p.is_zero():
            return RatFunc(ZERO)
        return _finish(p, {}, Fraction(1))

    @staticmethod
    def const(c: Number) -> "RatFunc":
        return RatFunc.from_poly(Poly.const(c))

    @staticmethod
    def var(name: str, power: int = 1) -> "RatFunc":
        return RatFunc(Poly.var(name, power))

    @staticmethod
    def monomial(exps: Mapping[str, int], coeff: Number = 1) -> "RatFunc":
        return RatFunc.from_poly(Poly.monomial(exps, coeff))

    @staticmethod
    def coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc.from_poly(x)
        if isinstance(x, (int, Fraction)):
            return RatFunc.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return not self.den

    def as_poly(self) -> Poly:
        if self.den:
            raise ValueError("rational function has a nontrivial denominator")
        return self.num * (Fraction(1) / self.scalar)

    def try_poly(self) -> "Poly | None":
        """The Laurent polynomial equal to self, or None.

        Decided by exact division of the expanded numerator by the expanded
        denominator, so composite factors that trial division left in place
        do not hide a polynomial.
        """
        if not self.den:
            return self.as_poly()
        return self.num.divexact(self.denominator_poly())

    def is_constant(self) -> bool:
        return not self.den and self.num.is_constant()

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return Fraction(self.num.constant_term()) / self.scalar

    def denominator_poly(self) -> Poly:
        d = Poly.const(self.scalar)
        for f, m in self.den:
            d = d * f ** m
        return d

    def numerator_poly(self) -> Poly:
        return self.num

    def variables(self) -> set:
        vs = self.num.variables()
        for f, _ in self.den:
            vs |= f.variables()
        return vs

    # arithmetic -----------------------------------------------------------
    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, self.scalar)

    def __add__(self, other) -> "RatFunc":
        if not isinstance(other, (RatFunc, Poly, int, Fraction)):
            return NotImplemented
        other = RatFunc.coerce(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            num = self.num * other.scalar + other.num * self.scalar
            return _finish(num, dict(self.den), self.scalar * other.scalar)
        d1, d2 = dict(self.den), dict(other.den)
        lcm_f: Dict[Poly, int] = dict(d1)
        for f, m in d2.items():
            if m > lcm_f.get(f, 0):
                lcm_f[f] = m
        n1 = self.num * other.scalar
        for f, m in lcm_f.items():
            extra = m - d1.get(f, 0)
            if extra:
                n1 = n1 * f ** extra
        n2 = other.num * self.scalar
        for f, m in lcm_f.items():
            extra = m - d2.get(f, 0)
            if extra:
                n2 = n2 * f ** extra
        return _finish(n1 + n2, lcm_f, self.scalar * other.scalar)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        if not isinstance(other, (RatFunc, Poly, int, Fraction)):
            return NotImplemented
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc(ZERO)
            return RatFunc(self.num, self.den, self.scalar / other) if self.num else self
        if not isinstance(other, (RatFunc, Poly)):
            return NotImplemented
        other = RatFunc.coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc(ZERO)
        # Cancel crosswise first so the trial divisions see small operands.
        n1, f2 = _cancel(self.num, dict(other.den))
        n2, f1 = _cancel(other.num, dict(self.den))
        merged = f1
        for f, m in f2.items():
            merged[f] = merged.get(f, 0) + m
        return _finish(n1 * n2, merged, self.scalar * other.scalar, cancel=False)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("zero-divisor")
        num = Poly.const(self.scalar)
        for f, m in self.den:
            num = num * f ** m
        return _finish(num, {}, Fraction(1), extra_den=self.num)

    def __truediv__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("zero-divisor")
            return RatFunc(self.num, self.den, self.scalar * other) if self.num else self
        if not isinstance(other, (RatFunc, Poly)):
            return NotImplemented
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return RatFunc(ONE)
        num = self.num ** n
        den = {f: m * n for f, m in self.den}
        return RatFunc(*_content_fold(num, _sort_factors(den), self.scalar ** n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, (RatFunc, Poly, int, Fraction)):
            return NotImplemented
        return (self - RatFunc.coerce(other)).is_zero()

    __hash__ = None

    def cross_equal(self, other: "RatFunc") -> bool:
        """Equality by full cross-multiplication num1*den2 - num2*den1 == 0."""
        return (self.num * other.denominator_poly() - other.num * self.denominator_poly()).is_zero()

    # structure --------------------------------------------------------------
    def coefficients_in(self, name: str) -> Dict[int, "RatFunc"]:
        """Coefficients with respect to ``name``; the denominator must not involve it."""
        for f, _ in self.den:
            if f.degree(name) or f.low_degree(name):
                raise ValueError(f"denominator involves {name}")
        return {
            e: _finish(p, dict(self.den), self.scalar)
            for e, p in sorted(self.num.coefficients_in(name).items())
        }

    def degree_in(self, name: str) -> int:
        """Degree of ``name`` in numerator minus degree in denominator."""
        d = self.num.degree(name)
        for f, m in self.den:
            d -= m * f.degree(name)
        return d

    def substitute(self, rules: Mapping[str, "Poly | RatFunc"]) -> "RatFunc":
        if not rules:
            return self
        polyrules = {}
        ratrules = {}
        for v, img in rules.items():
            if not isinstance(img, (Poly, RatFunc, int, Fraction)):
                raise ValueError("unsupported-substitution")
            img = RatFunc.coerce(img) if not isinstance(img, Poly) else img
            if isinstance(img, RatFunc):
                if img.is_poly() and (img.num.is_monomial() or img.scalar == 1):
                    polyrules[v] = img.as_poly()
                else:
                    ratrules[v] = img
            else:
                polyrules[v] = img
        if not ratrules:
            # negative powers of a non-monomial image need the rational path
            for v, img in polyrules.items():
                if not img.is_monomial() and self.num.low_degree(v) < 0:
                    ratrules[v] = RatFunc.from_poly(img)
            for v in ratrules:
                polyrules.pop(v, None)
        if ratrules:
            return _substitute_general(self, polyrules, ratrules)
        num = self.num.substitute(polyrules)
        result = RatFunc.from_poly(num) * Fraction(1)
        result = RatFunc(result.num, result.den, result.scalar * self.scalar)
        for f, m in self.den:
            g = f.substitute(polyrules)
            if g.is_zero():
                raise ZeroDivisionError("singular-substitution")
            result = result / (RatFunc.from_poly(g) ** m)
        return result

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        d = Fraction(self.scalar)
        for f, m in self.den:
            v = f.evaluate(values)
            if v == 0:
                raise ZeroDivisionError("singular-parameter")
            d *= v ** m
        return self.num.evaluate(values) / d

    # rendering ------------------------------------------------------------
    def canonical(self) -> str:
        """Golden-file form: ``num / [f1][f2]^2 * 1/scalar``."""
        if self.num.is_zero():
            return "0"
        if not self.den:
            return (self.num * (Fraction(1) / self.scalar)).canonical()
        s = self.num.canonical()
        dens = "".join(f"[{f.canonical()}]" + (f"^{m}" if m > 1 else "") for f, m in self.den)
        out = f"{s} / {dens}" if dens else s
        if self.scalar != 1:
            out += f" * {Fraction(1) / self.scalar}"
        return out

    __str__ = canonical

    def pretty(self) -> str:
        """Compact form such as ``-1/[1-c]`` or ``c*q/[1-c][1-c*q]``."""
        if self.num.is_zero():
            return "0"
        num = self.num * (Fraction(1) / self.scalar) if not self.den else self.num
        scalar = Fraction(1) if not self.den else self.scalar
        if scalar < 0:
            num, scalar = -num, -scalar
        if scalar.denominator != 1:
            num, scalar = num * scalar.denominator, Fraction(scalar.numerator)
        dens = "".join(
            "[" + f.pretty().replace(" ", "") + "]" + (f"^{m}" if m > 1 else "") for f, m in self.den
        )
        if scalar != 1:
            dens = (str(scalar) if not dens else f"{scalar}*") + dens if dens else str(scalar)
        ntxt = num.pretty()
        if not dens:
            return ntxt
        if len(num) > 1:
            ntxt = f"({ntxt})"
        return f"{ntxt}/{dens}"

    def latex(self) -> str:
        if self.num.is_zero():
            return "0"
        if not self.den:
            return (self.num * (Fraction(1) / self.scalar)).latex()
        dens = "".join(
            "(" + f.latex() + ")" + (f"^{{{m}}}" if m > 1 else "") for f, m in self.den
        )
        num, scalar = self.num, Fraction(self.scalar)
        if scalar.denominator != 1:
            num, scalar = num * scalar.denominator, Fraction(scalar.numerator)
        if scalar != 1:
            dens = f"{scalar}" + dens
        return f"\\frac{{{num.latex()}}}{{{dens}}}"

    def __repr__(self) -> str:
        return f"RatFunc({self.pretty()})"


def _cancel(num: Poly, factors: Dict[Poly, int]) -> Tuple[Poly, Dict[Poly, int]]:
    out = {}
    for f, m in factors.items():
        while m:
            qt = num.divexact(f)
            if qt is None:
                break
            num = qt
            m -= 1
        if m:
            out[f] = m
    return num, out


def _content_fold(num: Poly, den: Factors, scalar: Fraction) -> Tuple[Poly, Factors, Fraction]:
    if num.is_zero():
        return ZERO, (), Fraction(1)
    cont = num.content()
    if scalar < 0:
        cont = -cont
    if cont != 1:
        if cont.denominator == 1 and all(type(c) is int for c in num.terms.values()):
            n = cont.numerator
            num = Poly._raw({k: c // n for k, c in num.terms.items()})
        else:
            num = num * (Fraction(1) / cont)
        scalar = Fraction(scalar) / cont
    return num, den, Fraction(scalar)


def _insert_factor(g: Poly, mult: int, factors: Dict[Poly, int]) -> Tuple[Fraction, int]:
    """Add primitive-normalized pieces of ``g**mult`` to ``factors``.

    Returns the (scalar, monomial key) that was split off ``g``.
    """
    scal, mkey, prim = g.primitive()
    scal = scal ** mult
    mkey = mkey * mult
    if prim.is_constant():
        return scal, mkey
    s0, k0, pieces = _peel_binomials(prim)
    scal *= s0 ** mult
    mkey += k0 * mult
    stack = [(p, mult) for p in pieces]
    while stack:
        f, m = stack.pop()
        if f in factors:
            factors[f] += m
            continue
        split = False
        for h in list(factors):
            if len(h.terms) < len(f.terms):
                qt = f.divexact(h)
                if qt is not None:
                    factors[h] += m
                    s2, k2, p2 = qt.primitive()
                    scal *= s2 ** m
                    mkey += k2 * m
                    if not p2.is_constant():
                        stack.append((p2, m))
                    split = True
                    break
        if not split:
            factors[f] = factors.get(f, 0) + m
    return scal, mkey


def _binomial(lo_key: int, hi_key: int, ratio: Fraction) -> Poly:
    return Poly({0: 1, hi_key - lo_key: ratio}).primitive()[2]


def _peel_binomials(f: Poly) -> Tuple[Fraction, int, list]:
    """Split off binomial factors such as ``1 - c*q^k`` by trial division.

    In a product of binomials the two smallest terms (in any monomial order)
    determine a factor up to its multiplicity, so a few candidates suffice.
    Returns ``(scalar, monomial key, factors)`` whose product is ``f``.
    """
    out = []
    scal = Fraction(1)
    mkey = 0
    while len(f.terms) > 2:
        keys = sorted(f.terms)
        found = None
        for k0, k1 in ((keys[0], keys[1]), (keys[-2], keys[-1])):
            r = Fraction(f.terms[k1]) / Fraction(f.terms[k0])
            for cand in {r, Fraction(1), Fraction(-1)} | {r / j for j in range(2, 5)}:
                g = _binomial(k0, k1, cand)
                qt = f.divexact(g)
                if qt is not None:
                    found = g, qt
                    break
            if found:
                break
        if not found:
            break
        g, qt = found
        out.append(g)
        s2, k2, f = qt.primitive()
        scal *= s2
        mkey += k2
    if not f.is_constant():
        out.append(f)
    else:
        scal *= Fraction(f.constant_term())
    return scal, mkey, out


def _finish(num: Poly, factors: Dict[Poly, int], scalar: Fraction,
            cancel: bool = True, extra_den: Poly | None = None) -> RatFunc:
    if num.is_zero():
        return RatFunc(ZERO)
    factors = dict(factors)
    if extra_den is not None:
        scal, mkey = _insert_factor(extra_den, 1, factors)
        scalar = Fraction(scalar) * scal
        if mkey:
            num = num.mul_monomial(-mkey)
        cancel = True
    if cancel and factors:
        num, factors = _cancel(num, factors)
    return RatFunc(*_content_fold(num, _sort_factors(factors), Fraction(scalar)))


def ratfunc_normalize(num: Poly, den_factors: Iterable[Poly] = ()) -> RatFunc:
    """Build ``num / prod(den_factors)`` in normal form.

    Every factor is made primitive, monomials move to the numerator, and each
    stored factor that divides the numerator is cancelled.
    """
    factors: Dict[Poly, int] = {}
    scalar = Fraction(1)
    for f in den_factors:
        if f.is_zero():
            raise ZeroDivisionError("zero-divisor")
        scal, mkey = _insert_factor(f, 1, factors)
        scalar *= scal
        if mkey:
            num = num.mul_monomial(-mkey)
    return _finish(num, factors, scalar)


def _substitute_general(r: RatFunc, polyrules, ratrules) -> RatFunc:
    # Substitution of rational images: expand term by term.
    def sub_poly(p: Poly) -> RatFunc:
        total = RatFunc(ZERO)
        cache = {}
        for k, c in p.terms.items():
            exps = decode(k)
            term = RatFunc.const(c)
            rest = {}
            for v, e in exps.items():
                if v in ratrules:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = ratrules[v] ** e
                    term = term * cache[key]
                elif v in polyrules:
                    term = term * RatFunc.from_poly(polyrules[v] ** e)
                else:
                    rest[v] = e
            total = total + term * RatFunc(Poly.monomial(rest))
        return total

    out = sub_poly(r.num) * (Fraction(1) / r.scalar)
    for f, m in r.den:
        g = sub_poly(f)
        if g.is_zero():
            raise ZeroDivisionError("singular-substitution")
        out = out / g ** m
    return out


def limit_at_alpha_infinity(r: RatFunc, name: str = "alpha") -> RatFunc:
    """Limit as ``name`` -> infinity of a rational function of bounded degree."""
    if r.is_zero():
        return r
    dn = r.num.degree(name)
    dd = 0
    lead_den = RatFunc.const(r.scalar)
    for f, m in r.den:
        df = f.degree(name)
        dd += m * df
        lf = f.coefficients_in(name)[df]
        lead_den = lead_den * RatFunc.from_poly(lf) ** m
    if dn > dd:
        raise ArithmeticError("divergent-limit")
    if dn < dd:
        return RatFunc(ZERO)
    lead_num = RatFunc.from_poly(r.num.coefficients_in(name)[dn])
    return lead_num / lead_den


def rf(x) -> RatFunc:
    return RatFunc.coerce(x)


def rvar(name: str) -> RatFunc:
    return RatFunc.var(name)


RZERO = RatFunc(ZERO)
RONE = RatFunc(ONE)

__all__ = [
    "RatFunc",
    "ratfunc_normalize",
    "limit_at_alpha_infinity",
    "rf",
    "rvar",
    "RZERO",
    "RONE",
    "encode",
    "ONE_KEY",
]
