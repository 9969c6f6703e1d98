"""Lommel and q-Lommel polynomial families, explicit sums and connection formulas.

Polynomials in ``x`` with coefficients in Q(q, c) are carried as ``RatFunc``
values whose denominators are free of ``x``.  Three-term recurrences are the
ground truth; every closed formula here is compared against them.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Callable, List, Mapping, Sequence

from .exactalg import ONE, ZERO, Poly, RatFunc, Series, series_div, var
from .exactalg.ratfunc import RONE, RZERO
from .qseries import QINV, gauss_binomial, qpoch_ratfunc, qpochhammer

q = var("q")
c = var("c")
x = var("x")
z = var("z")
s = var("s")
t = var("t")
nu = var("nu")

Coeff = Callable[[int], RatFunc]

FAMILIES = (
    "lommel_monic",
    "lommel_classical_R",
    "q_lommel_classical",
    "q_lommel_evenodd",
    "q_lommel_R1",
    "R1_first_qBessel",
    "R3_laurent",
    "r3_rescaled",
    "assoc_AW",
    "rr_hat",
)


def _r(p) -> RatFunc:
    return RatFunc.coerce(p)


def _inv(*factors: Poly) -> RatFunc:
    out = RONE
    for f in factors:
        out = out / RatFunc.from_poly(f)
    return out


# recurrence data -------------------------------------------------------------

def lam_monic_lommel(n: int) -> RatFunc:
    return _inv(c + n, c + (n - 1))


def lam_classical(n: int) -> RatFunc:
    """``c q^(n-1) / ((1 - c q^(n-1)) (1 - c q^n))``."""
    return _r(c * q ** (n - 1)) * _inv(1 - c * q ** (n - 1), 1 - c * q ** n)


def lam_evenodd(n: int) -> RatFunc:
    m, odd = divmod(n, 2)
    if odd:
        return _r(q ** m) * _inv(1 - c * q ** (2 * m), 1 - c * q ** (2 * m + 1))
    return _r(c * q ** (3 * m - 1)) * _inv(1 - c * q ** (2 * m - 1), 1 - c * q ** (2 * m))


def b_r1(n: int) -> RatFunc:
    return _r(q ** n) * _inv(1 - c * q ** n)


def a_r1(n: int) -> RatFunc:
    return _r(c * q ** (2 * n - 1)) * _inv(1 - c * q ** (n - 1), 1 - c * q ** n)


def b_r3(n: int) -> RatFunc:
    return _r(c * q ** n) * _inv(1 - c * q ** n)


def a_r3(n: int) -> RatFunc:
    return _r(c * c * q ** (2 * n - 1)) * _inv(1 - c * q ** (n - 1), 1 - c * q ** n)


def a_rr_hat(n: int) -> RatFunc:
    return _inv(c + (n - 1), c + n)


def _zero(n: int) -> RatFunc:
    return RZERO


# generic recurrences ---------------------------------------------------------

def jacobi_sequence(b: Coeff, lam: Coeff, n: int, xv=x) -> List[RatFunc]:
    """``P_{k+1} = (x - b_k) P_k - lam_k P_{k-1}`` with ``P_{-1} = 0``, ``P_0 = 1``."""
    xr = _r(xv)
    out = [RONE]
    prev = RZERO
    for k in range(n):
        nxt = (xr - b(k)) * out[-1]
        if k:
            nxt = nxt - lam(k) * prev
        prev = out[-1]
        out.append(nxt)
    return out


def r1_sequence(b: Coeff, a: Coeff, lam: Coeff, n: int, xv=x) -> List[RatFunc]:
    """``P_{k+1} = (x - b_k) P_k - (a_k x + lam_k) P_{k-1}`` with ``P_{-1} = 0``, ``P_0 = 1``."""
    xr = _r(xv)
    out = [RONE]
    prev = RZERO
    for k in range(n):
        nxt = (xr - b(k)) * out[-1]
        if k:
            nxt = nxt - (a(k) * xr + lam(k)) * prev
        prev = out[-1]
        out.append(nxt)
    return out


@lru_cache(maxsize=None)
def _family_table(family: str, n: int) -> tuple:
    if family == "lommel_monic":
        seq = jacobi_sequence(_zero, lam_monic_lommel, n)
    elif family == "q_lommel_classical":
        seq = jacobi_sequence(_zero, lam_classical, n)
    elif family == "q_lommel_evenodd":
        seq = jacobi_sequence(_zero, lam_evenodd, n)
    elif family == "q_lommel_R1":
        seq = r1_sequence(b_r1, a_r1, _zero, n)
    elif family == "r3_rescaled":
        seq = r1_sequence(b_r3, a_r3, _zero, n)
    elif family == "rr_hat":
        seq = r1_sequence(_zero, a_rr_hat, _zero, n)
    elif family == "lommel_classical_R":
        seq = _lommel_R(n)
    elif family == "R1_first_qBessel":
        seq = _first_qbessel_R(n)
    elif family == "R3_laurent":
        seq = _third_qbessel_R(n)
    else:
        raise ValueError(f"unknown family {family!r}")
    return tuple(seq)


def _lommel_R(n: int, shift: int = 0) -> List[RatFunc]:
    # R_{k,nu}(x): polynomial in 1/x.
    v = nu + shift
    xi = _r(Poly.var("x", -1))
    out = [RONE, _r(v * 2) * xi]
    for k in range(1, n):
        out.append(_r((v + k) * 2) * xi * out[k] - out[k - 1])
    return out[: n + 1]


def _first_qbessel_R(n: int) -> List[RatFunc]:
    # R^(1)_{k,nu}(x;q) with c standing for q^nu.
    xi2 = _r(Poly.var("x", -1) * 2)
    out = [RONE, xi2 * _r(1 - c)]
    for k in range(1, n):
        out.append(xi2 * _r(1 - c * q ** k) * out[k] - _r(c * q ** (k - 1)) * out[k - 1])
    return out[: n + 1]


def _third_qbessel_R(n: int) -> List[RatFunc]:
    # R^(3)_{m,nu}(z;q) with c standing for q^nu; Laurent in z.
    zr = _r(z)
    zi = _r(Poly.var("z", -1))
    out = [RONE]
    prev = RZERO
    for m in range(n):
        nxt = (zr + zi * _r(1 - c * q ** m)) * out[-1] - prev
        prev = out[-1]
        out.append(nxt)
    return out


def family_polynomial(family: str, n: int, params: Mapping[str, object] | None = None) -> RatFunc:
    """The ``n``-th member of a family, by its three-term recurrence.

    ``params`` optionally rebinds symbols (for example ``{"c": c*q}``) after
    construction; a binding that zeroes a denominator raises ``singular-parameter``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if family == "assoc_AW":
        from .askey_wilson import assoc_aw_polynomial
        return assoc_aw_polynomial(n, params or {})
    p = _family_table(family, n)[n]
    if params:
        try:
            p = p.substitute(params)
        except ZeroDivisionError as exc:
            raise ZeroDivisionError("singular-parameter") from exc
    return p


def family_sequence(family: str, n: int) -> List[RatFunc]:
    return list(_family_table(family, n))


# explicit formulas -------------------------------------------------------------

def _qp(arg: Poly, k: int, base=None) -> RatFunc:
    return RatFunc.from_poly(qpochhammer(arg, k, base))


def _qp_inv(args: Sequence[Poly], k: int, base=None) -> RatFunc:
    return qpoch_ratfunc(args, k, base).inverse()


def evenodd_even_sum(n: int, inner_lower_last: Poly | None = None) -> RatFunc:
    """Double sum for ``p_{2n}``; ``inner_lower_last`` overrides the last inner lower parameter."""
    last = c if inner_lower_last is None else inner_lower_last
    total = RZERO
    for k in range(n + 1):
        outer = (_qp(q ** -n, k) * _qp(c * q ** n, k) * _qp(c, k) * _qp_inv([q], k)
                 * _r(q ** k * x ** (2 * k)))
        inner = RZERO
        for j in range(n - k + 1):
            term = (_qp(c * q ** (k - 1), j) * _qp_inv([q], j)
                    * _r(1 - c * q ** (k - 1 + 2 * j)) * _inv(1 - c * q ** (k - 1))
                    * _qp(c * q ** (n + k), j) * _qp(q ** (k - n), j) * _qp(q ** k, j)
                    * _qp_inv([q ** -n, c * q ** n, last], j)
                    * _r(c ** j * q ** (-j * k + j * (j - 1))))
            inner = inner + term
        total = total + outer * inner
    pre = _r(q ** comb(n, 2) * (-1) ** n) * _qp_inv([c], 2 * n)
    return pre * total


def evenodd_odd_sum(n: int, inner_lower_last: Poly | None = None, c_sign: int = 1) -> RatFunc:
    """Double sum for ``p_{2n+1}``.

    ``inner_lower_last`` overrides the last inner lower parameter and
    ``c_sign=-1`` uses ``c^(-s)`` instead of ``c^s`` in the inner summand.
    """
    last = c if inner_lower_last is None else inner_lower_last
    total = RZERO
    for k in range(n + 1):
        outer = (_qp(q ** -n, k) * _qp(c * q ** (n + 1), k) * _qp(c * q, k) * _qp_inv([q], k)
                 * _r(c ** -k * q ** (-k * k) * x ** (2 * k + 1)))
        inner = RZERO
        for j in range(n - k + 1):
            term = (_qp(c * q ** k, j) * _qp_inv([q], j)
                    * _r(1 - c * q ** (k + 2 * j)) * _inv(1 - c * q ** k)
                    * _qp(c * q ** (n + k + 1), j) * _qp(q ** (k - n), j) * _qp(q ** (k + 1), j)
                    * _qp_inv([q ** -n, c * q ** (n + 1), last], j)
                    * _r(c ** (c_sign * j) * q ** (-(3 * k + 2) * j - j * (j - 1))))
            inner = inner + term
        total = total + outer * inner
    pre = _r((-c) ** n * q ** (n * n + comb(n + 1, 2))) * _qp_inv([c * q], 2 * n)
    return pre * total


def classical_sum(n: int) -> RatFunc:
    total = RZERO
    for k in range(n // 2 + 1):
        coef = (_r(gauss_binomial(n - k, k) * (-c) ** k * q ** (k * k - k))
                * _qp_inv([c], k) * _qp_inv([c * q ** (n - 1)], k, QINV))
        total = total + coef * _r(x ** (n - 2 * k))
    return total


def r1_sum(n: int) -> RatFunc:
    total = ZERO
    for k in range(n + 1):
        for a in range(n - k + 1):
            total = total + (
                (-x * c ** -1) ** k * q ** -comb(k, 2)
                * gauss_binomial(k + a, a, QINV) * c ** -a
                * gauss_binomial(n - a, k, QINV) * x ** (n - k - a)
            )
    return _r(total) * _qp_inv([c ** -1], n, QINV)


def evenodd_pair_sum(n: int, odd: bool) -> RatFunc:
    """Single-index sums for ``p_{2n}`` (odd=False) or ``p_{2n+1}`` (odd=True)."""
    e = 1 if odd else 0
    total = RZERO
    for k in range(n + 1):
        inner = ZERO
        for j in range(k + 1):
            # [m, 0] = 1 even for m = -1
            second = ONE if j == 0 else gauss_binomial(n - k + j - 1 + e, j)
            inner = inner + (gauss_binomial(n - j, k - j) * second
                             * c ** j * q ** (j * n + comb(k, 2)))
        total = total + _r(inner * qpochhammer(c * q ** k, 2 * n - 2 * k + e)
                           * x ** (2 * n - 2 * k + e) * (-1) ** k)
    return total * _qp_inv([c], 2 * n + e)


EXPLICIT = ("evenodd_even", "evenodd_odd", "classical", "R1", "evenodd_pair")


def explicit_formula(which: str, n: int, variant: str = "printed") -> RatFunc:
    """Closed-form sum for the ``n``-th polynomial of a family.

    ``evenodd_even``/``evenodd_odd`` give ``p_{2n}``/``p_{2n+1}``;
    ``evenodd_pair`` gives ``p_n`` through the single-index sums.
    For the odd double sum ``variant="cq"`` replaces the last inner lower
    parameter ``c`` by ``c*q`` and ``variant="c_inverse"`` uses ``c^(-s)``
    in the inner summand.
    """
    if which == "evenodd_even":
        return evenodd_even_sum(n, c * q if variant == "cq" else None)
    if which == "evenodd_odd":
        return evenodd_odd_sum(n, c * q if variant == "cq" else None,
                               -1 if variant == "c_inverse" else 1)
    if which == "classical":
        return classical_sum(n)
    if which == "R1":
        return r1_sum(n)
    if which == "evenodd_pair":
        m, odd = divmod(n, 2)
        return evenodd_pair_sum(m, bool(odd))
    raise ValueError(f"unknown explicit formula {which!r}")


def explicit_target(which: str, n: int) -> RatFunc:
    """Recurrence polynomial that ``explicit_formula(which, n)`` must equal."""
    return {
        "evenodd_even": lambda: family_polynomial("q_lommel_evenodd", 2 * n),
        "evenodd_odd": lambda: family_polynomial("q_lommel_evenodd", 2 * n + 1),
        "classical": lambda: family_polynomial("q_lommel_classical", n),
        "R1": lambda: family_polynomial("q_lommel_R1", n),
        "evenodd_pair": lambda: family_polynomial("q_lommel_evenodd", n),
    }[which]()


def generating_function_coeffs(order: int) -> List[Poly]:
    """Coefficients of ``t^n`` in ``sum_k (-x t/c)^k q^(-k(k-1)/2) / (t/c, t x; 1/q)_{k+1}``."""
    total = Series("t", order)
    for k in range(order + 1):
        num = _r((-x * c ** -1) ** k * q ** -comb(k, 2))
        den = qpoch_ratfunc([t * c ** -1, t * x], k + 1, QINV)
        term = Series.from_ratfunc(num / den, "t", order - k).shift(k)
        total = total + term
    out = [co.try_poly() for co in total.coeffs]
    if any(p is None for p in out):
        raise ArithmeticError("generating function coefficient is not a polynomial")
    return out


def generating_function_target(n: int) -> RatFunc:
    return _qp(c ** -1, n, QINV) * family_polynomial("q_lommel_R1", n)


# connection coefficients ---------------------------------------------------------

def _sq(p: RatFunc) -> RatFunc:
    return p.substitute({"x": x * x})


def connection_terms(direction: str, n: int) -> List[tuple]:
    """Terms ``(k, coefficient, polynomial)`` of one side of a connection relation."""
    out = []
    for k in range(n + 1):
        if direction == "r_in_p":
            coef = (_r(gauss_binomial(n, k) * c ** k * q ** (n * n - (n - k) ** 2))
                    * _qp_inv([c * q ** (n - 1), c * q ** (2 * n - k)], k, QINV))
            poly = family_polynomial("q_lommel_evenodd", 2 * n - 2 * k)
        elif direction == "p_in_r":
            coef = (_r(gauss_binomial(n, k) * (-c) ** k * q ** (2 * n * k - comb(k + 1, 2)))
                    * _qp_inv([c * q ** (n - 1), c * q ** (2 * n - 1)], k, QINV))
            poly = _sq(family_polynomial("q_lommel_R1", n - k))
        else:
            raise ValueError(f"unknown direction {direction!r}")
        out.append((k, coef, poly))
    return out


def connection_expand(direction: str, n: int) -> dict:
    """Compare both sides of a connection relation; returns a report row."""
    rhs = RZERO
    for _, coef, poly in connection_terms(direction, n):
        rhs = rhs + coef * poly
    if direction == "r_in_p":
        lhs = _sq(family_polynomial("q_lommel_R1", n))
    else:
        lhs = family_polynomial("q_lommel_evenodd", 2 * n)
    ok = lhs == rhs
    row = {"id": f"prop:connection-{direction}", "order": n, "status": "pass" if ok else "fail",
           "lhs": lhs.canonical(), "rhs": rhs.canonical()}
    if not ok:
        row["witness"] = (lhs - rhs).canonical()
    return row


def connection_matrix(direction: str, size: int) -> List[List[RatFunc]]:
    """Lower-triangular matrix M with ``row_n = sum_j M[n][j] * basis_j``.

    For ``r_in_p`` the basis is ``p_{2j}``; for ``p_in_r`` it is ``r_j(x^2)``.
    """
    mat = [[RZERO] * size for _ in range(size)]
    for n in range(size):
        for k, coef, _ in connection_terms(direction, n):
            mat[n][n - k] = coef
    return mat


def connection_round_trip(size: int) -> bool:
    """Product of the two connection matrices is the identity."""
    a = connection_matrix("r_in_p", size)
    b = connection_matrix("p_in_r", size)
    for i in range(size):
        for j in range(size):
            acc = RZERO
            for k in range(size):
                acc = acc + a[i][k] * b[k][j]
            if acc != (RONE if i == j else RZERO):
                return False
    return True


# relations between families ------------------------------------------------------

def r_vs_r3(n: int) -> bool:
    """``r_n(x) == r3_n(c x) / c^n``."""
    lhs = family_polynomial("q_lommel_R1", n)
    rhs = family_polynomial("r3_rescaled", n).substitute({"x": c * x}) * _r(c ** -n)
    return lhs == rhs


def h_vs_first_qbessel(n: int) -> bool:
    """``h_n(x) == R^(1)_n(2/x) / (c;q)_n``."""
    lhs = family_polynomial("q_lommel_classical", n)
    rhs = family_polynomial("R1_first_qBessel", n).substitute({"x": Poly.var("x", -1) * 2})
    return lhs == rhs * _qp_inv([c], n)


def r3_vs_laurent(n: int) -> bool:
    """``s^n R3_n(1/s; 1/q) == (1/c; 1/q)_n r3_n(s^2)`` with c standing for q^nu."""
    lau = family_polynomial("R3_laurent", n).substitute(
        {"z": Poly.var("s", -1), "q": QINV, "c": Poly.var("c", -1)})
    lhs = lau * _r(s ** n)
    rhs = _qp(c ** -1, n, QINV) * family_polynomial("r3_rescaled", n).substitute({"x": s * s})
    return lhs == rhs


def monic_lommel_vs_R(n: int) -> bool:
    """``h_n(x; nu) == R_{n,nu}(2/x) / (nu)_n`` for the classical Lommel polynomials."""
    lhs = family_polynomial("lommel_monic", n).substitute({"c": nu})
    rhs = family_polynomial("lommel_classical_R", n).substitute({"x": Poly.var("x", -1) * 2})
    poch = RONE
    for i in range(n):
        poch = poch * _r(nu + i)
    return lhs == rhs / poch


# Bessel-type recurrences ------------------------------------------------------------

def _even_series(r: RatFunc, name: str, order: int, new: str) -> Series:
    """Read an even polynomial in ``name`` as a series in ``new = name^2``."""
    cs = [RZERO] * (order + 1)
    for e, co in r.coefficients_in(name).items():
        if e < 0 or e % 2:
            raise ValueError(f"expected even nonnegative powers of {name}")
        if e // 2 <= order:
            cs[e // 2] = co
    return Series(new, order, cs)


def bessel_recurrence_sides(which: str, n: int, order: int) -> tuple:
    """Both sides of the Bessel-function recurrence for ``J_(nu+n)``, as series.

    The common factor ``w^(nu-1)`` (with ``w = z/2`` for the classical and first
    q-Bessel cases and ``w = z`` for the third) and the infinite products are
    divided out, then everything is multiplied by ``w^(n-1)``; what remains is
    even in ``w`` and is returned as a series in ``t = w^2`` (``w`` is carried by ``s``).
    """
    from .qseries import bessel_like_series

    if n < 1:
        raise ValueError("n must be at least 1")
    w = s
    u = "t"
    if which == "classical":
        def g(shift):
            return bessel_like_series("classical", order, nu + shift, u).subs_monomial(4, 1).truncate(order)
        rn = _lommel_R(n)[n].substitute({"x": w * 2}) * _r(w ** n)
        rp = _lommel_R(n - 1, 1)[n - 1].substitute({"x": w * 2}) * _r(w ** (n - 1)) * _r(nu)
        poch = RONE
        for k in range(1, n + 1):
            poch = poch * _r(nu + k)
        lhs_pref = 1 / poch
        g_top, g_0, g_m = g(n), g(0), g(-1)
    elif which == "first_q":
        def g(param):
            return bessel_like_series("first_q", order, param, u).subs_monomial(4, 1).truncate(order)
        rn = _first_qbessel_R(n)[n].substitute({"x": w * 2}) * _r(w ** n)
        rp = (_first_qbessel_R(n - 1)[n - 1].substitute({"c": c * q, "x": w * 2})
              * _r(w ** (n - 1)) * _r(1 - c))
        lhs_pref = _r(c ** n * q ** comb(n, 2)) / qpoch_ratfunc([c * q], n)
        g_top, g_0, g_m = g(c * q ** (n + 1)), g(c * q), g(c)
    elif which == "third_q":
        def g(param):
            return bessel_like_series("third_q", order, param, u)
        rn = _third_qbessel_R(n)[n].substitute({"z": w}) * _r(w ** n)
        rp = (_third_qbessel_R(n - 1)[n - 1].substitute({"c": c * q, "z": w})
              * _r(w ** (n - 1)) * _r(1 - c))
        lhs_pref = 1 / qpoch_ratfunc([c * q], n)
        g_top, g_0, g_m = g(c * q ** (n + 1)), g(c * q), g(c)
    else:
        raise ValueError(f"unknown Bessel kind {which!r}")
    lhs = (g_top * lhs_pref).shift(n).truncate(order)
    rhs = _even_series(rn, "s", order, u) * g_0 - _even_series(rp, "s", order, u) * g_m
    return lhs, rhs


def bessel_recurrence_check(which: str, n: int, order: int = 6) -> bool:
    lhs, rhs = bessel_recurrence_sides(which, n, order)
    return lhs.first_difference(rhs) is None


# limits in m as stabilization ---------------------------------------------------------

def third_bessel_ratio(order: int, cval: Poly) -> Series:
    """``J^(3)_(nu+1)(z) / J^(3)_nu(z)`` as a series in ``z``, with ``cval`` for ``q^(nu+1)``."""
    from .qseries import bessel_like_series

    half = order // 2 + 1
    h1 = bessel_like_series("third_q", half, cval * q, "z").subs_monomial(1, 2).truncate(order)
    h0 = bessel_like_series("third_q", half, cval, "z").subs_monomial(1, 2).truncate(order)
    return (series_div(h1, h0) * (1 / _r(1 - cval))).shift(1).truncate(order)


def r3_ratio_series(m: int, order: int) -> Series:
    """``R^(3)_(m,nu+2)(z) / R^(3)_(m+1,nu+1)(z)`` expanded at ``z = 0``."""
    top = _r(Poly.var("z", m + 1))
    num = _third_qbessel_R(m)[m].substitute({"c": c * q * q}) * top
    den = _third_qbessel_R(m + 1)[m + 1].substitute({"c": c * q}) * top
    return series_div(Series.from_ratfunc(num, "z", order), Series.from_ratfunc(den, "z", order))


def r3_ratio_agreement(m: int, order: int) -> int | None:
    """First ``z``-order where the cutoff-``m`` ratio leaves the Bessel ratio (None: agrees through ``order``)."""
    return r3_ratio_series(m, order).first_difference(third_bessel_ratio(order, c * q))


def ks_limit_defect(m: int, k: int, order: int) -> int | None:
    """``q``-valuation of the ``z^(2k)`` defect in ``z^m R^(3)_(m,nu)(z) -> (c;q)_inf/(z^2;q)_inf 1phi1(0;c;q,q z^2)``.

    Both sides are divided by ``(c;q)_m`` resp. ``(c;q)_inf`` so the comparison
    is between rational functions; the defect is expanded in ``q`` through
    ``order`` and None means it vanishes to that order.
    """
    rhs = RZERO
    for j in range(k + 1):
        h = _r((-1) ** j * q ** (comb(j, 2) + j)) / (qpoch_ratfunc([q], j) * qpoch_ratfunc([c], j))
        rhs = rhs + h / qpoch_ratfunc([q], k - j)
    lhs = (_third_qbessel_R(m)[m] * _r(Poly.var("z", m))).coefficients_in("z").get(2 * k, RZERO)
    lhs = lhs / qpoch_ratfunc([c], m)
    return Series.from_ratfunc(lhs - rhs, "q", order).valuation()


# t_n and s_n -------------------------------------------------------------------------------

def evenodd_half_sequences(n: int) -> tuple:
    """``t_k`` and ``s_k`` (``k <= n``) from their own three-term recurrences.

    ``t``: ``B_0 = 1/((1-c)(1-cq))``, ``B_k = lam_2k + lam_(2k+1)``, ``Lambda_k = lam_(2k-1) lam_2k``.
    ``s``: ``B_k = lam_(2k+2) + lam_(2k+1)``, ``Lambda_k = lam_(2k+1) lam_2k``.
    """
    lam = lam_evenodd
    tb = lambda k: _inv(1 - c, 1 - c * q) if k == 0 else lam(2 * k) + lam(2 * k + 1)
    tl = lambda k: lam(2 * k - 1) * lam(2 * k)
    sb = lambda k: lam(2 * k + 2) + lam(2 * k + 1)
    sl = lambda k: lam(2 * k + 1) * lam(2 * k)
    return jacobi_sequence(tb, tl, n), jacobi_sequence(sb, sl, n)


def evenodd_half_check(n: int) -> tuple:
    """``p_2k(x) == t_k(x^2)`` and ``p_(2k+1)(x) == x s_k(x^2)`` for all ``k <= n``."""
    ts, ss = evenodd_half_sequences(n)
    even = all(_sq(ts[k]) == family_polynomial("q_lommel_evenodd", 2 * k) for k in range(n + 1))
    odd = all(_sq(ss[k]) * _r(x) == family_polynomial("q_lommel_evenodd", 2 * k + 1)
              for k in range(n + 1))
    return even, odd
