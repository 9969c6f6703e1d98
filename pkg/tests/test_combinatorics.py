from math import comb

import pytest

from qlommel.combinatorics import (
    COMB_IDENTITIES, Motzkin2Path, Polyomino, SchroderPath, comb_identity_verify, constant,
    displayed_lambda_products, enumerate_motzkin2, enumerate_path_tuples, enumerate_polyominoes,
    enumerate_schroder, flajolet_fraction, lambda_products, motzkin_weight,
    nonintersecting_weight_sum, phi_bijection_check, phi_inverse, phi_map, polyomino_weight,
    schroder_moments, schroder_sum, symbolic,
)
from qlommel.exactalg import Series, rf
from qlommel.moments import CFSpec, hankel_determinant, moments_from_cf

A, B, C, D = (symbolic(f) for f in "abcd")
ONE = constant(1)
FIG_PATH = "UURBDBUUDRDDB"


def catalan(n):
    return comb(2 * n, n) // (n + 1)


# 2-Motzkin paths ------------------------------------------------------------------------

def test_motzkin_counts():
    assert [p.steps for p in enumerate_motzkin2(0, 3)] == [""]
    assert sorted(p.steps for p in enumerate_motzkin2(2, 1)) == ["BB", "BR", "RB", "RR", "UD"]
    for n in range(9):
        assert sum(1 for _ in enumerate_motzkin2(n, n)) == catalan(n + 1)


def test_motzkin_paths_valid_and_bounded():
    for n in range(7):
        for p in enumerate_motzkin2(n, 2):
            assert p.is_valid() and p.height() <= 2 and len(p.steps) == n


def test_motzkin_weights():
    assert motzkin_weight(Motzkin2Path(""), A, B, C, D) == rf(1)
    assert motzkin_weight(Motzkin2Path("UD"), A, B, C, D) == C(0) * D(1)
    fig = A(2) ** 2 * B(0) * B(1) * B(2) * C(0) * C(1) ** 2 * C(2) * D(1) * D(2) ** 2 * D(3)
    assert motzkin_weight(Motzkin2Path(FIG_PATH), A, B, C, D) == fig
    total = sum((motzkin_weight(p, A, B, C, D) for p in enumerate_motzkin2(2, 1)), rf(0))
    assert total == A(0) ** 2 + A(0) * B(0) * 2 + B(0) ** 2 + C(0) * D(1)


@pytest.mark.parametrize("m", range(4))
def test_flajolet_lemma(m):
    frac = flajolet_fraction(m, 8, A, B, C, D)
    for n in range(9):
        total = sum((motzkin_weight(p, A, B, C, D) for p in enumerate_motzkin2(n, m)), rf(0))
        assert frac[n] == total


# polyominoes ----------------------------------------------------------------------------

def test_single_cell():
    cells = list(enumerate_polyominoes(max_area=1))
    assert len(cells) == 1
    al = cells[0]
    assert (al.col, al.row, al.area) == (1, 1, 1)
    assert al.diagonals() == [(1, "EN")]


@pytest.mark.parametrize("semi", range(2, 10))
def test_polyomino_catalan_counts(semi):
    found = [al for al in enumerate_polyominoes(max_semiperimeter=semi) if al.col + al.row == semi]
    assert len(found) == catalan(semi - 1)
    assert len(set(found)) == len(found)


def test_polyominoes_valid_and_classified():
    for al in enumerate_polyominoes(max_area=7):
        assert al.is_valid()
        diags = al.diagonals()
        assert sum(sz for sz, _ in diags) == al.area
        assert all(cls in ("NN", "NE", "EN", "EE") for _, cls in diags)
        assert len(diags) == al.col + al.row - 1


def test_bounds_respected():
    for al in enumerate_polyominoes(max_area=8, diagonal_bound=2, column_bound=3):
        assert al.max_diagonal() <= 2 and al.area <= 8
        assert all(tp - b <= 3 for b, tp in al.columns())
    with pytest.raises(ValueError):
        list(enumerate_polyominoes())


def test_phi_examples():
    single = phi_map(Motzkin2Path(""))
    assert (single.col, single.row, single.area) == (1, 1, 1)
    fig = phi_map(Motzkin2Path(FIG_PATH))
    assert fig.upper == "NNNNEEENNENEEEE"
    assert fig.lower == "EEENENEEENNNNEN"
    assert phi_inverse(fig).steps == FIG_PATH
    assert polyomino_weight(fig, A, B, C, D) == motzkin_weight(Motzkin2Path(FIG_PATH), A, B, C, D) * D(0)
    with pytest.raises(ValueError):
        phi_inverse(Polyomino("NE", "NE"))


def test_phi_bijection_exhaustive():
    out = phi_bijection_check(8, 3)
    assert out["round_trip"] and out["image"] and out["weight"]


# Schroder paths -------------------------------------------------------------------------

def test_schroder_examples():
    assert [p.steps for p in enumerate_schroder(3, 3)] == [""]
    assert sorted(p.steps for p in enumerate_schroder(0, 1)) == ["E", "US"]
    assert schroder_sum(1, A, B) == B(0) + A(1)
    expected = B(0) ** 2 + A(1) * B(0) * 2 + A(1) * B(1) + A(1) * A(2) + A(1) ** 2
    assert schroder_sum(2, A, B) == expected
    with pytest.raises(ValueError):
        list(enumerate_schroder(2, 1))


def test_schroder_path_geometry():
    for p in enumerate_schroder(0, 4):
        pts = p.points()
        assert pts[-1] == (4, 0) and min(y for _, y in pts) >= 0
    assert SchroderPath(0, "US").end == 1


@pytest.mark.parametrize("n", range(6))
def test_schroder_sum_is_r1_moment(n):
    mom = moments_from_cf(CFSpec("type_r1", b=B, a=A), n).values
    assert schroder_sum(n, A, B) == mom[n]


def test_nonintersecting_examples():
    assert nonintersecting_weight_sum(0, A, B) == rf(1)
    assert nonintersecting_weight_sum(1, A, B) == A(1) * A(2) + A(1) * B(1)
    assert nonintersecting_weight_sum(2, ONE, ONE) == rf(8)


@pytest.mark.parametrize("n", range(6))
def test_unit_weight_concurrence(n):
    tuples = sum(1 for _ in enumerate_path_tuples(n))
    mom = schroder_moments(2 * n, ONE, ONE)
    assert tuples == 2 ** comb(n + 1, 2)
    assert hankel_determinant(mom, n) == rf(2 ** comb(n + 1, 2))


@pytest.mark.parametrize("n", range(4))
def test_lgv_symbolic(n):
    mom = schroder_moments(2 * n, A, B)
    assert nonintersecting_weight_sum(n, A, B) == hankel_determinant(mom, n)


def test_lambda_products_match_displayed_values():
    assert lambda_products(2, A, B) == displayed_lambda_products()


def test_paths_in_tuples_do_not_meet():
    for tup in enumerate_path_tuples(3):
        seen = set()
        for p in tup:
            pts = set(p.points())
            assert seen.isdisjoint(pts)
            seen |= pts


# registered identities --------------------------------------------------------------------

@pytest.mark.parametrize("id_", [
    "lem:flajolet", "prop:PP", "cor:XYq", "thm:ratio-of-R1", "cor:double-sum",
    "thm:cigler-kratt", "eq:BM1", "eq:BM2", "eq:classxy", "thm:DF-BM", "thm:concurmom", "def:phi",
])
def test_comb_identities_at_default_bounds(id_):
    from qlommel.registry import verify
    rows = verify(id_)
    assert rows and all(r["status"] in ("pass", "flagged") for r in rows)
    assert any(r["status"] == "pass" for r in rows)


def test_unknown_comb_identity():
    with pytest.raises(KeyError, match="unknown-identity"):
        comb_identity_verify("lem:none")
    assert "thm:concurmom" in COMB_IDENTITIES


def test_unit_fraction_counts_paths():
    s = flajolet_fraction(1, 4, ONE, ONE, ONE, ONE)
    assert isinstance(s, Series)
    assert [s[n] for n in range(5)] == [rf(sum(1 for _ in enumerate_motzkin2(n, 1))) for n in range(5)]
