import pytest

from qlommel import lommel
from qlommel.exactalg import Poly, rf, var
from qlommel.lommel import (
    bessel_recurrence_check, connection_expand, connection_round_trip, connection_terms,
    evenodd_half_check, explicit_formula, explicit_target, family_polynomial,
    generating_function_coeffs, generating_function_target, h_vs_first_qbessel,
    ks_limit_defect, monic_lommel_vs_R, r3_ratio_agreement, r3_vs_laurent, r_vs_r3,
)
from qlommel.qseries import QINV, qpochhammer

q, c, x, nu = (var(n) for n in ("q", "c", "x", "nu"))

MONIC = ("lommel_monic", "q_lommel_classical", "q_lommel_evenodd", "q_lommel_R1", "r3_rescaled", "rr_hat")
PARITY = ("lommel_monic", "q_lommel_classical", "q_lommel_evenodd")


def inv(*fs):
    out = rf(1)
    for f in fs:
        out = out / rf(f)
    return out


def test_family_examples():
    assert family_polynomial("q_lommel_R1", 1) == rf(x) - inv(1 - c)
    assert family_polynomial("q_lommel_evenodd", 2) == rf(x * x) - inv(1 - c, 1 - c * q)
    for fam in lommel.FAMILIES:
        if fam != "assoc_AW":
            assert family_polynomial(fam, 0) == rf(1)


def test_unknown_family_and_negative_index():
    with pytest.raises(ValueError):
        family_polynomial("no_such_family", 2)
    with pytest.raises(ValueError):
        family_polynomial("q_lommel_R1", -1)


def test_singular_parameter_binding():
    with pytest.raises(ZeroDivisionError, match="singular-parameter"):
        family_polynomial("q_lommel_R1", 2, {"c": Poly.const(1)})


@pytest.mark.parametrize("family", MONIC)
@pytest.mark.parametrize("n", range(1, 9))
def test_degree_monic_parity(family, n):
    coeffs = family_polynomial(family, n).coefficients_in("x")
    assert max(coeffs) == n and min(coeffs) >= 0
    assert coeffs[n] == rf(1)
    if family in PARITY:
        assert all((e - n) % 2 == 0 for e in coeffs)


def test_explicit_examples():
    assert explicit_formula("classical", 0) == rf(1)
    assert explicit_formula("classical", 2) == rf(x * x) - rf(c) * inv(1 - c, 1 - c * q)
    assert explicit_formula("R1", 1) == rf(x) - inv(1 - c)


@pytest.mark.parametrize("n", range(7))
def test_evenodd_double_sums(n):
    assert explicit_formula("evenodd_even", n) == explicit_target("evenodd_even", n)
    assert explicit_formula("evenodd_odd", n, "c_inverse") == explicit_target("evenodd_odd", n)


def test_odd_double_sum_as_printed_differs_beyond_zero():
    assert explicit_formula("evenodd_odd", 0) == explicit_target("evenodd_odd", 0)
    assert explicit_formula("evenodd_odd", 1) != explicit_target("evenodd_odd", 1)


@pytest.mark.parametrize("n", range(11))
def test_classical_explicit(n):
    assert explicit_formula("classical", n) == explicit_target("classical", n)


@pytest.mark.parametrize("n", range(9))
def test_r1_explicit(n):
    assert explicit_formula("R1", n) == explicit_target("R1", n)


@pytest.mark.parametrize("n", range(12))
def test_evenodd_pair_explicit(n):
    assert explicit_formula("evenodd_pair", n) == explicit_target("evenodd_pair", n)


def test_generating_function_coefficients():
    coeffs = generating_function_coeffs(8)
    assert coeffs[0] == Poly.const(1)
    assert rf(coeffs[1]) == rf(qpochhammer(c ** -1, 1, QINV)) * (rf(x) - inv(1 - c))
    for n in range(9):
        assert rf(coeffs[n]) == generating_function_target(n)


def test_connection_examples():
    assert connection_expand("r_in_p", 0)["lhs"] == "1"
    k, coef, _ = connection_terms("r_in_p", 1)[1]
    assert k == 1 and coef == rf(c * q) * inv(1 - c, 1 - c * q)
    assert connection_round_trip(4)


@pytest.mark.parametrize("n", range(7))
def test_connections(n):
    assert connection_expand("r_in_p", n)["status"] == "pass"
    assert connection_expand("p_in_r", n)["status"] == "pass"


@pytest.mark.parametrize("n", range(7))
def test_family_relations(n):
    assert r_vs_r3(n)
    assert h_vs_first_qbessel(n)
    assert monic_lommel_vs_R(n)
    if n <= 5:
        assert r3_vs_laurent(n)


@pytest.mark.parametrize("which", ("classical", "first_q", "third_q"))
@pytest.mark.parametrize("n", range(1, 5))
def test_bessel_recurrences(which, n):
    assert bessel_recurrence_check(which, n, 6)


def test_bessel_recurrence_detects_wrong_index():
    lhs, rhs = lommel.bessel_recurrence_sides("classical", 2, 4)
    lhs3, _ = lommel.bessel_recurrence_sides("classical", 3, 4)
    assert lhs.first_difference(rhs) is None
    assert lhs3.first_difference(rhs) is not None


@pytest.mark.parametrize("m", range(5))
def test_r3_ratio_stabilizes(m):
    diff = r3_ratio_agreement(m, 8)
    assert diff is None or diff > 2 * m + 2


@pytest.mark.parametrize("m", range(7))
def test_third_bessel_limit_defect(m):
    for k in range(3):
        v = ks_limit_defect(m, k, 12)
        assert v is None or v >= m - k


def test_evenodd_halves():
    assert evenodd_half_check(5) == (True, True)
