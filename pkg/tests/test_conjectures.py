import pytest

from qlommel.conjectures import (
    bessel_ratio_coeff, finite_exponent, finite_kishore_decompose, finite_kishore_rows,
    finite_kishore_stabilizes, gamma_decompose, gamma_rows, gamma_thirdmom_specialization,
    kishore_decompose, kishore_exponents, kishore_numeric_check, kishore_rows,
    lommel_moment_check, minimal_denominator_report,
)
from qlommel.exactalg import Poly, rf, var

nu = var("nu")


def test_bessel_ratio_examples():
    assert bessel_ratio_coeff(1) == rf(1) / rf(1 + nu)
    dec = kishore_decompose(2)
    assert dec.denominator_exponents == {1: 2, 2: 1}
    assert dec.verdict == "nonnegative_integer_coeffs"
    with pytest.raises(ValueError):
        bessel_ratio_coeff(0)


def test_kishore_first_numerator_is_one():
    assert kishore_decompose(1).numerator == Poly.const(1)


@pytest.mark.parametrize("n", range(1, 11))
def test_kishore_verdict(n):
    assert kishore_decompose(n).verdict == "nonnegative_integer_coeffs"


@pytest.mark.parametrize("n", range(1, 9))
def test_kishore_numeric_oracle(n):
    assert kishore_numeric_check(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_kishore_matches_lommel_moments(n):
    assert lommel_moment_check(n)


def test_kishore_exponents():
    assert kishore_exponents(4) == {1: 4, 2: 2, 3: 1, 4: 1}


def test_minimality_is_reported():
    dec = kishore_decompose(4)
    leftover = minimal_denominator_report(dec, lambda k: nu + k)
    assert all(1 <= k <= 4 for k in leftover)


def test_finite_exponent_rules():
    assert finite_exponent(2, 5, 1) == 1
    assert finite_exponent(0, 0, 0) == 1
    assert finite_exponent(3, 0, 2) == max(0, (0 + 3 - 4 + 1) // 2)


def test_finite_small_cases():
    dec = finite_kishore_decompose(1, 0)
    assert dec.numerator is not None and dec.verdict == "nonnegative_integer_coeffs"
    two = finite_kishore_decompose(2, 3)
    assert two.denominator_exponents[1] == 1
    assert "clamped_equals_literal" in two.extra


@pytest.mark.parametrize("n", range(4))
def test_finite_stabilizes(n):
    assert finite_kishore_stabilizes(n, n + 1)
    assert finite_kishore_stabilizes(n, n + 2)


def test_finite_grid_has_no_fail():
    rows = finite_kishore_rows(4, 8)
    assert len(rows) == 5 * 9
    assert all(r["status"] in ("pass", "flagged") for r in rows)


def test_gamma_examples():
    zero = gamma_decompose("norlund", 0)
    assert zero.numerator == Poly.const(1)
    one = gamma_decompose("norlund", 1)
    assert one.verdict in ("nonnegative_integer_coeffs", "integer_coeffs")
    with pytest.raises(ValueError):
        gamma_decompose("gauss", 1)


@pytest.mark.parametrize("variant", ("norlund", "heine"))
def test_gamma_scan_runs(variant):
    rows = gamma_rows(variant, 6)
    assert [r["order"] for r in rows] == list(range(7))
    assert all(r["status"] in ("pass", "flagged") for r in rows)


@pytest.mark.parametrize("n", range(5))
def test_gamma_thirdmom_specialization(n):
    assert gamma_thirdmom_specialization(n)


def test_kishore_rows():
    rows = kishore_rows(10)
    assert all(r["status"] == "pass" for r in rows)
    assert rows[0]["numerator"] == "1"
