import json
from pathlib import Path

import pytest

import heightbound as hb

ROOT = Path(__file__).resolve().parents[2]


def test_presets_match_data_files():
    assert hb.preset_names() == ["cn", "e1", "e2", "f1", "f2"]
    for name in hb.preset_names():
        on_disk = json.loads((ROOT / "data" / "presets" / f"{name}.json").read_text())
        assert hb.preset(name) == on_disk


def test_normalize_rational():
    assert hb.normalize_rational("6/-4") == "-3/2"
    with pytest.raises(hb.ParseError):
        hb.normalize_rational("1.5.2")


def test_canonical_height_of_generators():
    e1 = hb.canonical_height(1, -1, 1, 1, tol="1/1000000000000")
    assert float(e1["value_decimal"]) == pytest.approx(0.25168910999854, abs=1e-11)
    e2_curve = hb.preset("e2")
    e2 = hb.canonical_height(e2_curve["a"], e2_curve["b"], 2, 2, tol="1/1000000000000")
    assert float(e2["value_decimal"]) == pytest.approx(1.06598813992892, abs=1e-11)


def test_canonical_height_regulator_37a1():
    h = hb.canonical_height(-16, 16, 0, 4, tol="1/1000000000000")
    assert float(h["value_decimal"]) == pytest.approx(0.0511114082399688, abs=1e-11)


def test_weierstrass_height_is_upper_bound():
    w = hb.weierstrass_height(-16, 16)
    assert w["direction"] == "upper"
    assert float(w["value_decimal"]) == pytest.approx(1.3862943611198906, rel=1e-15)


def test_evaluate_directions():
    lo = hb.evaluate("1/3log2", direction="lower")
    hi = hb.evaluate("1/3log2", direction="upper")
    assert lo["value_decimal"] < hi["value_decimal"]
    assert float(hi["value_decimal"]) == pytest.approx(0.23104906018664843, rel=1e-15)


def test_family_audit_flags_n1_only():
    assert hb.family_audit("f2", 1)["discrepancy"]["fails_audit"] is False
    assert "discrepancy" not in hb.family_audit("f2", 2)


def test_search_finds_expected_points():
    r = hb.search("f1", 2, 25)
    pairs = {(tuple(p["p1"]), tuple(p["p2"])) for p in r["points"]}
    assert pairs == {(("1", "1"), ("1", "1")), (("1", "-1"), ("1", "1"))}
    assert hb.search("f1", 2, 25, shards=4)["points"] == r["points"]
    assert hb.search("f2", 1, 25)["points"] == []


def test_census_counts():
    assert hb.census("z", 3, 2, 40, torsion=10, shards=4) == hb.census("z", 3, 2, 40, torsion=10)
    assert hb.census("eisenstein", 2, 1, 25)["ring"] == "eisenstein"


def test_exponents():
    entries = hb.exponents("count-weak-rank-one", N=3)
    assert [e["exponent"] for e in entries] == ["29", "22", "21"]
    e2 = hb.exponents("count-e2-rank-one")
    assert [e["exponent"] for e in e2] == ["29", "22", "21"]
    with pytest.raises(hb.DomainError):
        hb.exponents("count-weak-rank-one", N=1)


def test_errors_are_value_errors():
    with pytest.raises(hb.DomainError):
        hb.curve(0, 0, 0, 0)
    with pytest.raises(hb.DomainError):
        hb.curve(1, -1, 1, 2)
    with pytest.raises(hb.Error):
        hb.family_audit("f9", 1)
    assert issubclass(hb.Error, ValueError)
