"""Moments from Jacobi and type R_I continued fractions, K-fractions and Hankel determinants."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Tuple

from .exactalg import ZERO, Poly, RatFunc, Series, seqvar, series_div, var
from .exactalg.ratfunc import RONE, RZERO
from . import lommel
from .qseries import basic_hypergeometric_truncated

q = var("q")
c = var("c")
a = var("a")
b = var("b")
x = var("x")

Coeff = Callable[[int], RatFunc]


def _r(v) -> RatFunc:
    return RatFunc.coerce(v)


def _zero(k: int) -> RatFunc:
    return RZERO


def symbolic(family: str) -> Coeff:
    """Sequence ``k -> family_k`` of free symbols."""
    return lambda k: _r(var(seqvar(family, k)))


@dataclass(frozen=True)
class CFSpec:
    """A continued fraction for a moment generating function.

    ``jacobi``:  ``1/(1 - b_0 t - lam_1 t^2/(1 - b_1 t - ...))``
    ``type_r1``: ``1/(1 - b_0 t - (a_1 t + lam_1 t^2)/(1 - b_1 t - ...))``
    """

    kind: str
    b: Coeff = _zero
    a: Coeff = _zero
    lam: Coeff = _zero
    var: str = "t"
    label: str = ""


@dataclass
class MomentTable:
    values: List[RatFunc]
    source: str = ""

    def __getitem__(self, n: int) -> RatFunc:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def cf_series(spec: CFSpec, order: int, depth: int | None = None) -> Series:
    """Bottom-up evaluation of the fraction truncated after ``depth`` levels."""
    if depth is None:
        depth = order + 1
    if depth < order + 1:
        raise ValueError("depth-too-small")
    if spec.kind not in ("jacobi", "type_r1"):
        raise ValueError(f"unknown continued fraction kind {spec.kind!r}")
    v = spec.var
    one = Series.const(RONE, v, order)
    tail = None
    for k in range(depth - 1, -1, -1):
        den = one - Series.monomial(spec.b(k), 1, v, order)
        if tail is not None:
            num = Series.monomial(spec.lam(k + 1), 2, v, order)
            if spec.kind == "type_r1":
                num = num + Series.monomial(spec.a(k + 1), 1, v, order)
            den = den - num * tail
        tail = den.inverse()
    return tail


def moments_from_cf(spec: CFSpec, order: int, depth: int | None = None) -> MomentTable:
    return MomentTable(cf_series(spec, order, depth).coeffs, spec.label or spec.kind)


# named fractions ---------------------------------------------------------------

def spec_classical() -> CFSpec:
    return CFSpec("jacobi", lam=lommel.lam_classical, label="L_h")


def spec_evenodd() -> CFSpec:
    return CFSpec("jacobi", lam=lommel.lam_evenodd, label="L_p")


def spec_r1(var_name: str = "t") -> CFSpec:
    return CFSpec("type_r1", b=lommel.b_r1, a=lommel.a_r1, var=var_name, label="L_r")


def spec_monic_lommel() -> CFSpec:
    return CFSpec("jacobi", lam=lommel.lam_monic_lommel, label="L_lommel")


def stieltjes(lam: Coeff, var_name: str = "z", label: str = "") -> CFSpec:
    """``1/(1 - lam_1 z/(1 - lam_2 z/ ...))`` as a type R_I fraction with b = lam' = 0."""
    return CFSpec("type_r1", a=lam, var=var_name, label=label)


FUNCTIONALS = {"L_h": spec_classical, "L_p": spec_evenodd, "L_r": spec_r1}


@lru_cache(maxsize=None)
def functional_moments(name: str, order: int) -> Tuple[RatFunc, ...]:
    if name not in FUNCTIONALS:
        raise ValueError(f"unknown functional {name!r}")
    return tuple(moments_from_cf(FUNCTIONALS[name](), order).values)


def functional_apply(name: str, poly) -> RatFunc:
    """Linear extension of the moment functional to a polynomial in x."""
    p = _r(poly)
    parts = p.coefficients_in("x")
    if not parts:
        return RZERO
    if min(parts) < 0:
        raise ValueError("functional needs a polynomial in x")
    mom = functional_moments(name, max(parts))
    total = RZERO
    for e, co in parts.items():
        total = total + co * mom[e]
    return total



def moments_match_check(n: int) -> bool:
    """``L_p(r_n(x^2)) == c^n q^(n^2) / ((c;q)_n (cq;q)_n)``."""
    lhs = functional_apply("L_p", lommel.family_polynomial("q_lommel_R1", n).substitute({"x": x * x}))
    rhs = _r(c ** n * q ** (n * n))
    for k in range(n):
        rhs = rhs / _r((1 - c * q ** k) * (1 - c * q ** (k + 1)))
    return lhs.cross_equal(rhs)


def lr_of_r_check(n: int) -> bool:
    """``L_r(r_n(x)) == a_1 a_2 ... a_n`` for the type R_I data."""
    rhs = RONE
    for k in range(1, n + 1):
        rhs = rhs * lommel.a_r1(k)
    return functional_apply("L_r", lommel.family_polynomial("q_lommel_R1", n)).cross_equal(rhs)

# K-fractions -----------------------------------------------------------------------

def finite_K(nums: Sequence, dens: Sequence):
    """``nums[0]/(dens[0] + nums[1]/(dens[1] + ... + nums[m]/dens[m]))``.

    Works for RatFunc or Series entries.
    """
    if len(nums) != len(dens) or not nums:
        raise ValueError("need matching nonempty sequences")
    acc = None
    for i in range(len(nums) - 1, -1, -1):
        d = dens[i] if acc is None else dens[i] + acc
        try:
            acc = nums[i] / d
        except ZeroDivisionError as exc:
            raise ZeroDivisionError("singular-fraction-level") from exc
    return acc


def kk_transform(nums: Sequence, dens: Sequence, cs: Sequence) -> tuple:
    """Rescale a K-fraction level by level.

    ``cs[0]`` is ``c_{-1}`` and ``cs[i+1]`` is ``c_i``.  Returns
    ``(prefactor, nums', dens')`` with ``nums'_i = nums_i c_{i-1} c_i``,
    ``dens'_i = dens_i c_i`` and ``prefactor = 1/c_{-1}``.
    """
    if len(cs) != len(nums) + 1:
        raise ValueError("need one more scaling factor than levels")
    new_n = [nums[i] * cs[i] * cs[i + 1] for i in range(len(nums))]
    new_d = [dens[i] * cs[i + 1] for i in range(len(dens))]
    return 1 / _r(cs[0]) if not isinstance(cs[0], Series) else cs[0].inverse(), new_n, new_d


def odd_even_transform(lam: Coeff, variant: str = "first") -> tuple:
    """Fold a b = 0 Jacobi fraction onto its even moments.

    ``first``:  ``mu_{2n}(0, lam) = mu_n(B, Theta)`` with ``B_0 = lam_1``,
    ``B_n = lam_{2n} + lam_{2n+1}``, ``Theta_n = lam_{2n-1} lam_{2n}``.
    ``second``: ``mu_{2n+2}(0, lam) = lam_1 mu_n(B', Theta')`` with
    ``B'_n = lam_{2n+2} + lam_{2n+1}``, ``Theta'_n = lam_{2n} lam_{2n+1}``.
    Returns ``(B, Theta, prefactor)``.
    """
    if variant == "first":
        def B(n: int) -> RatFunc:
            return lam(1) if n == 0 else lam(2 * n) + lam(2 * n + 1)

        def T(n: int) -> RatFunc:
            return lam(2 * n - 1) * lam(2 * n)
        return B, T, RONE
    if variant == "second":
        def B2(n: int) -> RatFunc:
            return lam(2 * n + 2) + lam(2 * n + 1)

        def T2(n: int) -> RatFunc:
            return lam(2 * n) * lam(2 * n + 1)
        return B2, T2, lam(1)
    raise ValueError(f"unknown variant {variant!r}")


def hankel_determinant(moments: Sequence[RatFunc], n: int, shift: int = 0) -> RatFunc:
    """``det(mu_{i+j+shift})`` for ``0 <= i, j <= n`` by memoized cofactor expansion."""
    if len(moments) < 2 * n + shift + 1:
        raise ValueError("not enough moments")
    size = n + 1
    memo: Dict[int, RatFunc] = {}

    def det(row: int, cols: int) -> RatFunc:
        if row == size:
            return RONE
        if cols in memo:
            return memo[cols]
        total = RZERO
        sign = 1
        for j in range(size):
            if cols >> j & 1:
                continue
            entry = moments[row + j + shift]
            if not entry.is_zero():
                sub = det(row + 1, cols | (1 << j))
                total = total + entry * sub * sign
            sign = -sign
        memo[cols] = total
        return total

    return det(0, 0)


# identity catalog ---------------------------------------------------------------------

def _phi21(upper, lower, argument, order, var_name="z", power=1) -> Series:
    return basic_hypergeometric_truncated(upper, lower, argument, order, var_name, power)


def _compare(id_: str, lhs: Series, rhs: Series, order: int, extra: dict | None = None) -> dict:
    bad = lhs.first_difference(rhs)
    row = {"id": id_, "order": order, "status": "pass" if bad is None else "fail"}
    if bad is not None:
        row["first_failure_order"] = bad
        row["witness"] = (lhs[bad] - rhs[bad]).canonical()
    if extra:
        row.update(extra)
    return row


def _firstmom(order: int) -> dict:
    num = _phi21([ZERO, ZERO], [c * q], -1, order, "t", 2)
    den = _phi21([ZERO, ZERO], [c], -1, order, "t", 2)
    return _compare("thm:firstmom", series_div(num, den), cf_series(spec_classical(), order), order)


def _secondmom_ratio(order: int, num_arg) -> Series:
    num = basic_hypergeometric_truncated([ZERO], [c * q], num_arg, order, "t", 2)
    den = basic_hypergeometric_truncated([ZERO], [c], 1, order, "t", 2)
    return series_div(num, den)


def _secondmom(order: int) -> dict:
    cf = cf_series(spec_evenodd(), order)
    row = _compare("thm:secondmom", _secondmom_ratio(order, q), cf, order)
    if row["status"] == "fail":
        alt = _compare("thm:secondmom", _secondmom_ratio(order, 1), cf, order)
        if alt["status"] == "pass":
            row["status"] = "flagged"
            row["variant"] = "numerator argument t^2"
    return row


def _thirdmom(order: int) -> dict:
    num = basic_hypergeometric_truncated([ZERO], [c * q], q, order, "z")
    den = basic_hypergeometric_truncated([ZERO], [c], 1, order, "z")
    return _compare("thm:thirdmom", series_div(num, den), cf_series(spec_r1("z"), order), order)


def _bigcor(order: int) -> dict:
    lhs = cf_series(spec_r1("z"), order)
    rhs = cf_series(stieltjes(lommel.lam_evenodd), order)
    return _compare("cor:bigcor", lhs, rhs, order)


def equalmom_rows(max_m: int) -> List[dict]:
    """``L_r(x^m) == L_p(x^(2m))`` for each ``m <= max_m``."""
    lr = moments_from_cf(spec_r1(), max_m).values
    lp = moments_from_cf(spec_evenodd(), 2 * max_m).values
    rows = []
    for m in range(max_m + 1):
        ok = lr[m].cross_equal(lp[2 * m])
        row = {"id": "thm:equalmom", "order": m, "status": "pass" if ok else "fail"}
        if not ok:
            row["witness"] = (lr[m] - lp[2 * m]).canonical()
        rows.append(row)
    return rows


def _equalmom(order: int) -> dict:
    rows = equalmom_rows(order)
    bad = [r["order"] for r in rows if r["status"] != "pass"]
    row = {"id": "thm:equalmom", "order": order, "status": "pass" if not bad else "fail"}
    if bad:
        row["first_failure_order"] = bad[0]
    return row


def heine_beta(n: int) -> RatFunc:
    m, odd = divmod(n, 2)
    if odd:
        return (_r((1 - b * q ** m) * (a - c * q ** m) * q ** m)
                / _r((1 - c * q ** (2 * m)) * (1 - c * q ** (2 * m + 1))))
    return (_r((1 - a * q ** m) * (b - c * q ** m) * q ** (m - 1))
            / (_r(1 - c * q ** (2 * m - 1)) * _r(1 - c * q ** (2 * m))))


def _heine(order: int) -> dict:
    num = _phi21([a * q, b], [c * q], 1, order)
    den = _phi21([a, b], [c], 1, order)
    return _compare("lem:heine", series_div(num, den), cf_series(stieltjes(heine_beta), order), order)


def heine_specialization(order: int) -> dict:
    """Heine's fraction at a = b = 0, z = -t^2 against the classical q-Lommel fraction."""
    def beta0(n: int) -> RatFunc:
        return heine_beta(n).substitute({"a": ZERO, "b": ZERO})
    lhs = cf_series(stieltjes(beta0, "t"), order // 2).subs_monomial(-1, 2).truncate(order)
    return _compare("lem:heine-special", lhs, cf_series(spec_classical(), order), order)


def _norlund_parts(m: int, order: int) -> tuple:
    """``(c_m(z), e_m + d_m z)`` as series in z."""
    pre = _r((1 - a * q ** m) * (1 - b * q ** m) * q ** (m - 1))
    cm = Series("z", order, [RZERO, pre * _r(c), pre * _r(-a * b * q ** m)])
    em = _r(1 - c * q ** m)
    dm = _r(-(a + b - a * b * q ** m - a * b * q ** (m + 1)) * q ** m)
    return cm, Series("z", order, [em, dm])


def norlund_series(order: int, depth: int | None = None) -> Series:
    """Right side of the q-Norlund fraction, truncated after ``depth`` levels."""
    depth = order + 1 if depth is None else depth
    nums, dens = [], []
    for m in range(1, depth + 1):
        cm, dm = _norlund_parts(m, order)
        nums.append(cm)
        dens.append(dm)
    K = finite_K(nums, dens)
    head = Series("z", order, [_r(1 - c), _r(-(a + b - a * b - a * b * q))])
    return (head + K) * (1 / _r(1 - c))


def _norlund(order: int) -> dict:
    num = _phi21([a, b], [c], 1, order)
    den = _phi21([a * q, b * q], [c * q], 1, order)
    return _compare("lem:norlund", series_div(num, den), norlund_series(order), order)


def norlund_b(m: int) -> RatFunc:
    return _r((a + b - a * b * q ** m - a * b * q ** (m + 1)) * q ** m) / _r(1 - c * q ** m)


def norlund_a(m: int) -> RatFunc:
    return (_r(-(1 - a * q ** m) * (1 - b * q ** m) * c * q ** (m - 1))
            / (_r(1 - c * q ** (m - 1)) * _r(1 - c * q ** m)))


def norlund_lam(m: int) -> RatFunc:
    return (_r((1 - a * q ** m) * (1 - b * q ** m) * a * b * q ** (2 * m - 1))
            / (_r(1 - c * q ** (m - 1)) * _r(1 - c * q ** m)))


def spec_norlund_restated() -> CFSpec:
    return CFSpec("type_r1", b=norlund_b, a=norlund_a, lam=norlund_lam, var="z", label="norlund")


def _norlund_restated(order: int) -> dict:
    num = _phi21([a * q, b * q], [c * q], 1, order)
    den = _phi21([a, b], [c], 1, order)
    return _compare("prop:norlund-restated", series_div(num, den),
                    cf_series(spec_norlund_restated(), order), order)


def norlund_restated_by_transform(depth: int) -> bool:
    """Re-derive the restated fraction from the Norlund K-fraction via level rescaling.

    Works with exact rational functions in a, b, c, q, z at a finite depth:
    the inverted Norlund fraction ``(1-c)/c_0(z) * K_{m=0}^{depth}(c_m/(e_m + d_m z))``
    is rescaled with ``c_i = 1/(1 - c q^i)`` and compared with the truncated
    type R_I fraction, both as rational functions.
    """
    zz = var("z")

    def cm(m: int) -> RatFunc:
        return _r((1 - a * q ** m) * (1 - b * q ** m) * (c * zz - a * b * q ** m * zz * zz) * q ** (m - 1))

    def dm(m: int) -> RatFunc:
        return (_r(1 - c * q ** m)
                + _r(-(a + b - a * b * q ** m - a * b * q ** (m + 1)) * q ** m * zz))

    nums = [cm(m) for m in range(depth + 1)]
    dens = [dm(m) for m in range(depth + 1)]
    scal = [1 / _r(1 - c * q ** i) for i in range(-1, depth + 1)]
    pre, n2, d2 = kk_transform(nums, dens, scal)
    direct = finite_K(nums, dens) * _r(1 - c) / cm(0)
    transformed = finite_K(n2, d2) * pre * _r(1 - c) / cm(0)
    # truncated type R_I fraction with the same number of levels
    spec = spec_norlund_restated()
    acc = None
    for k in range(depth, -1, -1):
        den = RONE - spec.b(k) * _r(zz)
        if acc is not None:
            den = den - (spec.a(k + 1) * _r(zz) + spec.lam(k + 1) * _r(zz * zz)) * acc
        acc = 1 / den
    return direct == transformed and transformed == acc


def genequal_b(n: int) -> RatFunc:
    return _r(a * q ** n) / _r(1 - c * q ** n)


def genequal_a(n: int) -> RatFunc:
    return _r((a * q ** n - 1) * c * q ** (n - 1)) / (_r(1 - c * q ** (n - 1)) * _r(1 - c * q ** n))


def genequal_lam(n: int) -> RatFunc:
    m, odd = divmod(n, 2)
    if odd:
        return _r((a - c * q ** m) * q ** m) / (_r(1 - c * q ** (2 * m)) * _r(1 - c * q ** (2 * m + 1)))
    return (_r(-c * q ** (2 * m - 1) * (1 - a * q ** m))
            / (_r(1 - c * q ** (2 * m - 1)) * _r(1 - c * q ** (2 * m))))


def _genequalmom(order: int) -> dict:
    lhs = cf_series(CFSpec("type_r1", b=genequal_b, a=genequal_a, var="z"), order)
    rhs = cf_series(stieltjes(genequal_lam), order)
    return _compare("thm:genequalmom", lhs, rhs, order)


def _cor_2n_moment(order: int) -> dict:
    jac = moments_from_cf(CFSpec("jacobi", lam=genequal_lam), 2 * order).values
    r1 = moments_from_cf(CFSpec("type_r1", b=genequal_b, a=genequal_a), order).values
    even = Series("t", order, [jac[2 * n] for n in range(order + 1)])
    return _compare("cor:2n-moment", even, Series("t", order, r1), order)


def p_over_p(m: int, bseq: Coeff, aseq: Coeff, lseq: Coeff) -> tuple:
    """Both sides of the finite ratio identity for type R_I polynomials at level ``m``."""
    xi = Poly.var("x", -1)

    def shifted(f: Coeff) -> Coeff:
        return lambda k: f(k + 1)

    num = lommel.r1_sequence(shifted(bseq), shifted(aseq), shifted(lseq), m, xi)[m] * _r(x ** m)
    den = lommel.r1_sequence(bseq, aseq, lseq, m + 1, xi)[m + 1] * _r(x ** (m + 1))
    lhs = num / den
    xr = _r(x)
    nums = [-(aseq(i) * xr) - lseq(i) * xr * xr for i in range(m + 1)]
    dens = [RONE - bseq(i) * xr for i in range(m + 1)]
    rhs = finite_K(nums, dens) / nums[0]
    return lhs, rhs


def p_over_p_rows(max_m: int) -> List[dict]:
    rows = []
    for m in range(max_m + 1):
        lhs, rhs = p_over_p(m, symbolic("b"), symbolic("a"), symbolic("lam"))
        ok = lhs.cross_equal(rhs)
        rows.append({"id": "eq:P-over-P", "order": m, "status": "pass" if ok else "fail"})
    return rows


def _p_over_p(order: int) -> dict:
    rows = p_over_p_rows(min(order, 4))
    bad = [r["order"] for r in rows if r["status"] != "pass"]
    row = {"id": "eq:P-over-P", "order": min(order, 4), "status": "pass" if not bad else "fail"}
    if bad:
        row["first_failure_order"] = bad[0]
    return row


CF_IDENTITIES: Dict[str, Callable[[int], dict]] = {
    "thm:firstmom": _firstmom,
    "thm:secondmom": _secondmom,
    "thm:thirdmom": _thirdmom,
    "cor:bigcor": _bigcor,
    "thm:equalmom": _equalmom,
    "lem:heine": _heine,
    "lem:norlund": _norlund,
    "prop:norlund-restated": _norlund_restated,
    "thm:genequalmom": _genequalmom,
    "cor:2n-moment": _cor_2n_moment,
    "eq:P-over-P": _p_over_p,
}


def cf_identity_verify(id_: str, order: int) -> dict:
    if id_ not in CF_IDENTITIES:
        raise KeyError("unknown-identity")
    return CF_IDENTITIES[id_](order)
