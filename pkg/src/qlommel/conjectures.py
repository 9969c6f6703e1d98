"""Predicted-denominator decompositions for Bessel and q-hypergeometric ratios."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Tuple

from .exactalg import ZERO, Poly, RatFunc, Series, limit_at_alpha_infinity, series_div, var
from .exactalg.ratfunc import RONE
from . import lommel
from .moments import CFSpec, moments_from_cf, spec_r1
from .qseries import basic_hypergeometric_truncated, bessel_like_series

nu = var("nu")
q = var("q")
a = var("a")
b = var("b")
c = var("c")


def _r(v) -> RatFunc:
    return RatFunc.coerce(v)


@dataclass
class KishoreDecomposition:
    n: int
    numerator: Optional[Poly]
    denominator_exponents: Dict[int, int]
    verdict: str
    coefficient: RatFunc
    failure_witness: Optional[dict] = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"n": self.n, "verdict": self.verdict,
               "denominator_exponents": {str(k): e for k, e in sorted(self.denominator_exponents.items())},
               "numerator": self.numerator.canonical() if self.numerator is not None else None}
        if self.failure_witness:
            out["failure_witness"] = self.failure_witness
        out.update(self.extra)
        return out


def _scan(n: int, coeff: RatFunc, predicted: RatFunc, exps: Dict[int, int],
          allowed: Tuple[str, ...]) -> KishoreDecomposition:
    """Multiply by the predicted denominator and classify the result."""
    prod = coeff * predicted
    p = prod.try_poly()
    if p is None:
        bad = "".join(f"[{f.canonical()}]" for f, _ in prod.den)
        return KishoreDecomposition(n, None, exps, "failure_witness", coeff,
                                    {"n": n, "leftover_denominator": bad})
    if set(p.variables()) - set(allowed):
        return KishoreDecomposition(n, p, exps, "failure_witness", coeff,
                                    {"n": n, "unexpected_variables": sorted(p.variables())})
    for vec, co in p.sorted_terms():
        if any(e < 0 for e in vec):
            return KishoreDecomposition(n, p, exps, "failure_witness", coeff,
                                        {"n": n, "negative_exponent": str(vec)})
    for vec, co in p.sorted_terms():
        if Fraction(co).denominator != 1:
            return KishoreDecomposition(n, p, exps, "failure_witness", coeff,
                                        {"n": n, "monomial": _mono(vec), "value": str(co)})
    neg = [(vec, co) for vec, co in p.sorted_terms() if co < 0]
    if neg:
        vec, co = neg[0]
        return KishoreDecomposition(n, p, exps, "polynomial_confirmed", coeff,
                                    {"n": n, "monomial": _mono(vec), "value": str(co)})
    return KishoreDecomposition(n, p, exps, "nonnegative_integer_coeffs", coeff)


def _mono(vec) -> str:
    from .exactalg.poly import _RVARS
    return "*".join(f"{_RVARS[i]}^{e}" for i, e in enumerate(vec) if e) or "1"


# Kishore ----------------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bessel_ratio_series(order: int) -> Series:
    # J_{nu+1}/J_nu = w/(nu+1) * G_{nu+1}(w^2)/G_nu(w^2) with w = z/2
    g0 = bessel_like_series("classical", order, nu).subs_monomial(4, 1)
    g1 = bessel_like_series("classical", order, nu + 1).subs_monomial(4, 1)
    return (g1 / g0) * (1 / _r(nu + 1))


def bessel_ratio_coeff(n: int) -> RatFunc:
    """Coefficient of ``(z/2)^(2n-1)`` in ``J_{nu+1}(z)/J_nu(z)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _bessel_ratio_series(n - 1)[n - 1]


def kishore_exponents(n: int) -> Dict[int, int]:
    return {k: n // k for k in range(1, n + 1)}


def kishore_decompose(n: int) -> KishoreDecomposition:
    exps = kishore_exponents(n)
    pred = RONE
    for k, e in exps.items():
        pred = pred * _r(nu + k) ** e
    return _scan(n, bessel_ratio_coeff(n), pred, exps, ("nu",))


def bessel_ratio_numeric(n: int, nu_value: int) -> Fraction:
    """Same coefficient at an integer ``nu`` by plain rational series division."""
    def g(shift: int) -> List[Fraction]:
        out = []
        poch = Fraction(1)
        for k in range(n):
            out.append(Fraction((-1) ** k) / (factorial(k) * poch))
            poch *= nu_value + shift + 1 + k
        return out
    f, h = g(1), g(0)
    quot: List[Fraction] = []
    for m in range(n):
        acc = f[m] - sum(h[k] * quot[m - k] for k in range(1, m + 1))
        quot.append(acc / h[0])
    return quot[n - 1] / (nu_value + 1)


def kishore_numeric_check(n: int, values=(0, 1, 2)) -> bool:
    dec = kishore_decompose(n)
    if dec.numerator is None:
        return False
    for v in values:
        dval = 1
        for k, e in dec.denominator_exponents.items():
            dval *= (v + k) ** e
        if dec.numerator.evaluate({"nu": v}) != bessel_ratio_numeric(n, v) * dval:
            return False
    return True


def lommel_moment_check(n: int) -> bool:
    """The coefficient equals ``mu_(2n-2) / (nu + 1)`` for the monic Lommel functional at ``c = nu + 1``."""
    spec = CFSpec("jacobi", lam=lambda k: lommel.lam_monic_lommel(k).substitute({"c": nu + 1}))
    mom = moments_from_cf(spec, 2 * n - 2).values
    return bessel_ratio_coeff(n).cross_equal(mom[2 * n - 2] / _r(nu + 1))


def minimal_denominator_report(dec: KishoreDecomposition, factor) -> List[int]:
    """Keys ``k`` whose predicted factor still divides the numerator."""
    if dec.numerator is None:
        return []
    out = []
    for k in dec.denominator_exponents:
        if dec.denominator_exponents[k] and dec.numerator.divexact(factor(k)) is not None:
            out.append(k)
    return out


# finite Kishore ------------------------------------------------------------------------------

def finite_exponent(m: int, n: int, k: int, clamp: bool = True) -> int:
    if 2 * k == m:
        return 1
    e = max((n + 1) // (k + 1), (n + m - 2 * k + 1) // (m - k + 1))
    return max(e, 0) if clamp else e


@lru_cache(maxsize=None)
def _finite_ratio_series(m: int, order: int) -> Series:
    """``R_{m,nu+2}(x)/R_{m+1,nu+1}(x)`` in ``w = x/2``."""
    num = lommel._lommel_R(m, 2)[m]
    den = lommel._lommel_R(m + 1, 1)[m + 1]
    shift = _r(Poly.var("x", m + 1))
    rules = {"x": Poly.var("t") * 2}
    top = (num * shift).substitute(rules)
    bot = (den * shift).substitute(rules)
    return series_div(Series.from_ratfunc(top, "t", order), Series.from_ratfunc(bot, "t", order))


def finite_ratio_coeff(m: int, n: int) -> RatFunc:
    return _finite_ratio_series(m, 2 * n + 1)[2 * n + 1]


def finite_kishore_decompose(m: int, n: int) -> KishoreDecomposition:
    exps = {k: finite_exponent(m, n, k) for k in range(m + 1)}
    literal = {k: finite_exponent(m, n, k, clamp=False) for k in range(m + 1)}
    pred = RONE
    for k, e in exps.items():
        pred = pred * _r(nu + k + 1) ** e
    dec = _scan(n, finite_ratio_coeff(m, n), pred, exps, ("nu",))
    dec.extra["m"] = m
    dec.extra["clamped_equals_literal"] = exps == literal
    return dec


def finite_kishore_stabilizes(n: int, m: int) -> bool:
    """For ``m >= n + 1`` the finite coefficient equals the Bessel one."""
    return finite_ratio_coeff(m, n).cross_equal(bessel_ratio_coeff(n + 1))


# gamma_n ---------------------------------------------------------------------------------------

GAMMA_VARIANTS = ("norlund", "heine")


@lru_cache(maxsize=None)
def _gamma_series(variant: str, order: int) -> Series:
    if variant == "norlund":
        top = basic_hypergeometric_truncated([a * q, b * q], [c * q], 1, order, "z")
    elif variant == "heine":
        top = basic_hypergeometric_truncated([a * q, b], [c * q], 1, order, "z")
    else:
        raise ValueError(f"unknown variant {variant!r}")
    bot = basic_hypergeometric_truncated([a, b], [c], 1, order, "z")
    return series_div(top, bot)


def gamma_coeff(variant: str, n: int, order: Optional[int] = None) -> RatFunc:
    return _gamma_series(variant, max(n, order or 0))[n]


def gamma_exponents(n: int) -> Dict[int, int]:
    return {k: (n + 1) // (k + 1) for k in range(n + 1)}


def gamma_decompose(variant: str, n: int, order: Optional[int] = None) -> KishoreDecomposition:
    exps = gamma_exponents(n)
    pred = RONE
    for k, e in exps.items():
        pred = pred * _r(1 - c * q ** k) ** e
    coeff = gamma_coeff(variant, n, order) / _r(1 - c)
    dec = _scan(n, coeff, pred, exps, ("a", "b", "c", "q"))
    dec.extra["variant"] = variant
    if dec.verdict == "polynomial_confirmed":
        # the conjecture only asks for integer coefficients
        dec.extra["sign_note"] = dec.failure_witness
        dec.failure_witness = None
        dec.verdict = "integer_coeffs"
    return dec


def gamma_thirdmom_specialization(n: int) -> bool:
    """``a = 0``, ``z -> z/b``, ``b -> infinity`` turns the Norlund ratio into the R_I moments."""
    g = gamma_coeff("norlund", n).substitute({"a": ZERO}) * _r(Poly.var("b", -n))
    lim = limit_at_alpha_infinity(g, "b")
    return lim.cross_equal(moments_from_cf(spec_r1(), n).values[n])


# report rows ---------------------------------------------------------------------------------------

def _row(id_: str, dec: KishoreDecomposition, ok_verdicts: Tuple[str, ...]) -> dict:
    row = {"id": id_, "order": dec.n, "status": "pass" if dec.verdict in ok_verdicts else "flagged"}
    row.update(dec.to_json())
    return row


def kishore_rows(max_n: int) -> List[dict]:
    rows = []
    for n in range(1, max_n + 1):
        dec = kishore_decompose(n)
        row = _row("thm:kishore", dec, ("nonnegative_integer_coeffs",))
        if dec.verdict != "nonnegative_integer_coeffs":
            row["status"] = "fail"
        rows.append(row)
    return rows


def finite_kishore_rows(max_m: int, max_n: int) -> List[dict]:
    rows = []
    for m in range(max_m + 1):
        for n in range(max_n + 1):
            rows.append(_row("conj:finite-kishore", finite_kishore_decompose(m, n),
                             ("nonnegative_integer_coeffs",)))
    return rows


def gamma_rows(variant: str, max_n: int) -> List[dict]:
    ident = "conj:gamma-norlund" if variant == "norlund" else "conj:gamma-heine"
    return [_row(ident, gamma_decompose(variant, n, max_n),
                 ("nonnegative_integer_coeffs", "integer_coeffs")) for n in range(max_n + 1)]
