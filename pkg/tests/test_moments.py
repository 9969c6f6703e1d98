import pytest
from hypothesis import given, settings, strategies as st

from qlommel import lommel
from qlommel.exactalg import Poly, Series, rf, var
from qlommel.moments import (
    CF_IDENTITIES, CFSpec, cf_identity_verify, cf_series, equalmom_rows, finite_K, functional_apply,
    functional_moments, hankel_determinant, heine_specialization, kk_transform, lr_of_r_check,
    moments_from_cf, moments_match_check, norlund_restated_by_transform, odd_even_transform,
    p_over_p_rows, spec_classical, spec_evenodd, spec_monic_lommel, spec_norlund_restated, spec_r1,
    stieltjes, symbolic,
)

q, c, x = (var(n) for n in ("q", "c", "x"))
lam = symbolic("lam")

REGISTERED = {
    "L_h": spec_classical,
    "L_p": spec_evenodd,
    "L_r": spec_r1,
    "L_lommel": spec_monic_lommel,
    "norlund": spec_norlund_restated,
    "generic_jacobi": lambda: CFSpec("jacobi", b=symbolic("b"), lam=lam),
    "generic_r1": lambda: CFSpec("type_r1", b=symbolic("b"), a=symbolic("a"), lam=lam),
}


def test_jacobi_moment_examples():
    mom = moments_from_cf(CFSpec("jacobi", lam=lam), 5)
    assert mom[0] == rf(1)
    assert mom[1].is_zero() and mom[3].is_zero() and mom[5].is_zero()
    assert mom[2] == lam(1)
    assert mom[4] == lam(1) * lam(1) + lam(1) * lam(2)


def test_r1_first_moment():
    mu1 = moments_from_cf(spec_r1(), 1)[1]
    assert mu1 == lommel.b_r1(0) + lommel.a_r1(1)
    assert mu1 == rf(1) / rf((1 - c) * (1 - c * q))
    assert mu1 == lommel.lam_evenodd(1)


def test_depth_too_small():
    with pytest.raises(ValueError, match="depth-too-small"):
        moments_from_cf(spec_evenodd(), 4, depth=3)


@given(st.sampled_from(sorted(REGISTERED)), st.integers(0, 5))
@settings(max_examples=30, deadline=None)
def test_depth_stability(name, order):
    spec = REGISTERED[name]()
    lo = moments_from_cf(spec, order, depth=order + 1).values
    hi = moments_from_cf(spec, order, depth=order + 3).values
    assert lo == hi


@pytest.mark.parametrize("name", ("L_h", "L_p"))
def test_odd_moments_vanish(name):
    mom = functional_moments(name, 9)
    assert all(mom[n].is_zero() for n in range(1, 10, 2))


@pytest.mark.parametrize("m", range(9))
def test_equal_moments(m):
    assert functional_moments("L_r", m)[m] == functional_moments("L_p", 2 * m)[2 * m]


def test_equal_moment_rows():
    rows = equalmom_rows(8)
    assert [r["order"] for r in rows] == list(range(9))
    assert all(r["status"] == "pass" for r in rows)


@pytest.mark.parametrize("n", range(6))
def test_even_jacobi_equals_stieltjes(n):
    jac = moments_from_cf(CFSpec("jacobi", lam=symbolic("a")), 2 * n).values
    sti = moments_from_cf(stieltjes(symbolic("a"), "t"), n).values
    assert jac[2 * n] == sti[n]


def test_finite_K_and_identity_transform():
    a0, b0 = rf(var("a_0")), rf(var("b_0"))
    assert finite_K([a0], [b0]) == a0 / b0
    nums = [symbolic("a")(i) for i in range(4)]
    dens = [symbolic("b")(i) for i in range(4)]
    pre, n2, d2 = kk_transform(nums, dens, [rf(1)] * 5)
    assert pre == rf(1) and n2 == nums and d2 == dens
    cs = [symbolic("c")(i) for i in range(5)]
    pre, n2, d2 = kk_transform(nums, dens, cs)
    assert finite_K(n2, d2) * pre == finite_K(nums, dens)


def test_finite_K_zero_level():
    with pytest.raises(ZeroDivisionError, match="singular-fraction-level"):
        finite_K([rf(1), rf(1)], [rf(1), rf(0)])


def test_norlund_by_level_rescaling():
    assert norlund_restated_by_transform(4)


@pytest.mark.parametrize("variant", ("first", "second"))
def test_odd_even_transform(variant):
    B, T, pre = odd_even_transform(lam, variant)
    jac = moments_from_cf(CFSpec("jacobi", lam=lam), 10).values
    folded = moments_from_cf(CFSpec("jacobi", b=B, lam=T), 4).values
    for n in range(5):
        if variant == "first":
            assert jac[2 * n] == folded[n]
        else:
            assert jac[2 * n + 2] == pre * folded[n]


def test_evenodd_second_moment():
    B, _, _ = odd_even_transform(lommel.lam_evenodd, "first")
    assert B(0) == rf(1) / rf((1 - c) * (1 - c * q))
    assert functional_moments("L_p", 2)[2] == B(0)
    _, _, pre = odd_even_transform(lam, "second")
    assert moments_from_cf(CFSpec("jacobi", lam=lam), 2)[2] == pre * rf(1)


@pytest.mark.parametrize("n", range(5))
def test_hankel_product_formula(n):
    mom = moments_from_cf(CFSpec("jacobi", b=symbolic("b"), lam=lam), 2 * n).values
    expected = rf(1)
    for k in range(1, n + 1):
        expected = expected * lam(k) ** (n + 1 - k)
    assert hankel_determinant(mom, n) == expected


def test_hankel_base_case():
    mom = moments_from_cf(spec_evenodd(), 0).values
    assert hankel_determinant(mom, 0) == rf(1)


def test_functional_apply():
    assert functional_apply("L_p", Poly.const(1)) == rf(1)
    assert functional_apply("L_p", x * x) == lommel.lam_evenodd(1)
    with pytest.raises(ValueError):
        functional_apply("L_q", x)
    with pytest.raises(ValueError):
        functional_apply("L_p", Poly.var("x", -1))


@pytest.mark.parametrize("n", range(5))
def test_functionals_on_family(n):
    assert moments_match_check(n)
    assert lr_of_r_check(n)


def test_orthogonality_of_evenodd():
    for n in range(1, 5):
        p = lommel.family_polynomial("q_lommel_evenodd", n)
        for k in range(n):
            assert functional_apply("L_p", p * rf(x ** k)).is_zero()


@pytest.mark.parametrize("id_,order", [
    ("thm:firstmom", 8), ("thm:secondmom", 8), ("thm:thirdmom", 8), ("cor:bigcor", 8),
    ("thm:equalmom", 8), ("lem:heine", 6), ("lem:norlund", 6), ("prop:norlund-restated", 6),
    ("thm:genequalmom", 6), ("cor:2n-moment", 6), ("eq:P-over-P", 4),
])
def test_cf_identities(id_, order):
    row = cf_identity_verify(id_, order)
    assert row["id"] == id_ and row["status"] == "pass"


def test_cf_identity_low_orders():
    assert cf_identity_verify("cor:bigcor", 4)["status"] == "pass"
    assert cf_identity_verify("thm:genequalmom", 0)["status"] == "pass"


def test_heine_specialization_gives_firstmom():
    assert heine_specialization(6)["status"] == "pass"


def test_p_over_p_generic():
    assert all(r["status"] == "pass" for r in p_over_p_rows(4))


def test_unknown_identity():
    with pytest.raises(KeyError, match="unknown-identity"):
        cf_identity_verify("thm:nothing", 3)
    assert "thm:equalmom" in CF_IDENTITIES


def test_cf_series_kind_check():
    with pytest.raises(ValueError):
        cf_series(CFSpec("stieltjes"), 2)
    assert isinstance(cf_series(spec_evenodd(), 2), Series)
