from __future__ import annotations

import pytest

from codealg import fixtures
from codealg.fixtures import FixtureMismatch, check_fixture


@pytest.fixture(scope="module")
def results():
    return {name: check_fixture(name) for name in fixtures.NAMES}


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_matches_golden(results, name):
    assert results[name] == fixtures.golden(name)


def test_f2sq_values(results):
    r = results["f2sq"]
    assert r["simple"] is False and len(r["ideals"]) == 2
    assert r["ideals_annihilate"] and r["ideals_orthogonal"]
    assert r["field_disc"] == 3 and r["eigenvalue"] == "-1"
    assert r["other_ideals_found"] == 0


def test_even3_values(results):
    r = results["even3"]
    assert r["dim"] == 6 and r["unital"] and r["simple"]
    assert len(r["small_idempotents"]) == 6 and len(r["smap_idempotents"]) == 4
    assert r["orbit_9"] == "closed(9)"
    assert all(r["jordan_half"]) and all(r["primitive"])


def test_hamming8_values(results):
    r = results["hamming8"]
    assert (r["miyamoto_order"], r["aut_order"], r["group_order"]) == (16, 1344, 21504)
    assert r["dim"] == 22 and r["orbit"] == "closed(24)"
    assert r["smap_lambda_mu"] == ["1/8", "-1/8"]


def test_tampered_golden_reports_diff(monkeypatch):
    real = fixtures.golden("f2sq")
    monkeypatch.setattr(fixtures, "golden", lambda name: {**real, "dim": 5})
    with pytest.raises(FixtureMismatch) as err:
        check_fixture("f2sq")
    assert '-  "dim": 5' in err.value.diff and '+  "dim": 4' in err.value.diff


def test_unknown_example():
    with pytest.raises(ValueError):
        check_fixture("nope")
