import pytest

from qlommel.registry import (
    REGISTRY, identity_ids, resolve_bounds, suite, summarize, verify,
)


@pytest.fixture(scope="module")
def capped_rows():
    return suite(cap=2, jobs=4)


def test_suite_covers_every_id_once(capped_rows):
    ids = [r["id"] for r in capped_rows]
    assert set(ids) == set(identity_ids())
    # rows of one identity are contiguous, so each id is run exactly once
    runs = [i for k, i in enumerate(ids) if k == 0 or ids[k - 1] != i]
    assert runs == identity_ids()


def test_suite_rows_sorted_by_id(capped_rows):
    ids = [r["id"] for r in capped_rows]
    assert ids == sorted(ids)


def test_suite_rows_well_formed(capped_rows):
    for r in capped_rows:
        assert r["status"] in ("pass", "fail", "flagged")
        assert isinstance(r["order"], int) and "parameters" in r
    assert summarize(capped_rows)["fail"] == 0


def test_suite_order_independent_of_jobs():
    ids = ["thm:equalmom", "eq:BM1", "lem:flajolet"]
    serial = suite(ids, jobs=1, cap=2)
    parallel = suite(ids, jobs=3, cap=2)
    assert serial == parallel


def test_resolve_bounds():
    assert resolve_bounds("thm:equalmom") == {"max_m": 8}
    assert resolve_bounds("thm:equalmom", {"max_m": 3}) == {"max_m": 3}
    with pytest.raises(KeyError, match="unknown-identity"):
        resolve_bounds("thm:none")
    with pytest.raises(ValueError):
        resolve_bounds("thm:equalmom", {"order": 3})
    with pytest.raises(ValueError):
        resolve_bounds("thm:equalmom", {"max_m": -2})
    with pytest.raises(ValueError):
        resolve_bounds("thm:equalmom", {"max_m": 9}, cap=4)


def test_verify_records_parameters():
    rows = verify("thm:equalmom", {"max_m": 1})
    assert [r["parameters"] for r in rows] == [{"max_m": 1}] * 2


def test_every_identity_is_described():
    for ident in REGISTRY.values():
        assert ident.summary and ident.keys == tuple(ident.defaults)


def test_summarize_counts():
    rows = [{"status": "pass"}, {"status": "flagged"}, {"status": "pass"}]
    assert summarize(rows) == {"pass": 2, "fail": 0, "flagged": 1}
