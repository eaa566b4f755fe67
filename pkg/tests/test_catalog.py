import copy
import json
from fractions import Fraction

import pytest

from binomsum.catalog import (
    ENV_VAR,
    check_twins,
    default_catalog_path,
    identity_from_record,
    load_catalog,
    parse_catalog,
    verify_all,
    verify_identity,
)
from binomsum.closedform.expr import parse_expr
from binomsum.errors import ConvergenceError, SchemaError

GOSPER_REC = {
    "id": "g",
    "m": 3,
    "n": 1,
    "x": "1/2",
    "num_coeffs": ["-3", "25"],
    "e": 0,
    "f": 0,
    "k0": 0,
    "rhs": "pi/2",
    "domain_note": "",
    "paper_ref": "",
    "status": "verified",
}


def _rec(**kw):
    r = copy.deepcopy(GOSPER_REC)
    r.update(kw)
    return r


def test_default_catalog(catalog):
    assert len(catalog) >= 60
    raw = json.loads(default_catalog_path().read_text())
    ids = [e["id"] for e in raw["entries"]]
    assert len(ids) == len(set(ids)) == len(catalog)


def test_empty_catalog():
    assert parse_catalog({"version": "1", "entries": []}) == []


@pytest.mark.parametrize(
    "rec,field",
    [
        (_rec(n=3), "n"),
        (_rec(x=0.5), "x"),
        (_rec(x="1/0"), "x"),
        (_rec(num_coeffs=[]), "num_coeffs"),
        (_rec(rhs="log("), "rhs"),
        (_rec(status="maybe"), "status"),
        (_rec(family="LOGN"), "family"),
        (_rec(max_digits=0), "max_digits"),
        (_rec(e=True), "e"),
    ],
)
def test_schema_errors(rec, field):
    with pytest.raises(SchemaError) as ei:
        identity_from_record(rec)
    assert ei.value.entry_id == "g" and ei.value.field == field
    assert str(ei.value).startswith(f"[g].{field} ")


def test_missing_and_unknown_fields():
    r = _rec()
    del r["rhs"]
    with pytest.raises(SchemaError, match=r"\[g\]\.rhs"):
        identity_from_record(r)
    with pytest.raises(SchemaError, match="unknown fields"):
        identity_from_record(_rec(extra=1))


def test_divergent_entry():
    with pytest.raises(ConvergenceError, match=r"\[g\]"):
        identity_from_record(_rec(x="7"))


def test_duplicate_ids():
    with pytest.raises(SchemaError, match="duplicate"):
        parse_catalog({"version": "1", "entries": [GOSPER_REC, GOSPER_REC]})


def test_env_var_catalog(tmp_path, monkeypatch):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"version": "1", "entries": [GOSPER_REC]}))
    monkeypatch.setenv(ENV_VAR, str(p))
    assert default_catalog_path() == p
    assert [i.id for i in load_catalog()] == ["g"]


def test_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    with pytest.raises(SchemaError):
        load_catalog(p)


def test_gosper_verifies(catalog):
    r = verify_identity(catalog["gosper"], 50)
    assert r.passed and abs(r.abs_diff.value) <= Fraction(1, 10**49)


def test_new3_verifies(catalog):
    assert verify_identity(catalog["thm12-new3"], 40).passed


def test_perturbed_rhs_fails(catalog):
    ident = catalog["gosper"]
    bad = type(ident)(**{**ident.__dict__, "rhs": parse_expr("pi/2 + 1/10^6")})
    r = verify_identity(bad, 30)
    assert not r.passed
    assert abs(r.abs_diff.value - Fraction(1, 10**6)) <= Fraction(1, 10**25)
    assert "reason" in r.to_json()


def test_filter_single(catalog):
    s = verify_all(20, filter={"new-1"}, catalog=list(catalog.values()))
    assert len(s.reports) == 1 and s.reports[0].id == "new-1" and s.ok


def test_filter_unknown(catalog):
    with pytest.raises(KeyError):
        verify_all(20, filter={"no-such-id"}, catalog=list(catalog.values()))


def test_far_boundary_logn(catalog):
    r = verify_identity(catalog["logn-85_4"], 10)
    assert r.passed and r.terms_used > 20000


def test_known_typo_entries_fail_but_are_nonfatal(catalog):
    typos = [i for i in catalog.values() if i.status == "known-typo"]
    assert len(typos) >= 7
    s = verify_all(20, filter={i.id for i in typos}, catalog=list(catalog.values()))
    assert all(not r.passed for r in s.reports)
    assert s.ok and s.fail_count == 0 and len(s.known_typo) == len(typos)


def test_clamping(catalog):
    s = verify_all(40, filter={"logn-85_4", "logn-21"}, catalog=list(catalog.values()))
    n21, far = s.reports  # sorted by id
    assert far.id == "logn-85_4" and far.clamped_from == 40 and far.digits == 30 and far.passed
    # the other near-boundary entries need no clamp
    assert n21.clamped_from is None and n21.digits == 40 and n21.passed
    assert [c["id"] for c in s.to_json()["clamped"]] == ["logn-85_4"]


def test_report_json_schema(catalog):
    r = verify_identity(catalog["gosper"], 20)
    j = r.to_json()
    assert list(j) == ["id", "digits", "lhs", "rhs", "abs_diff", "pass", "terms_used", "elapsed_ns"]
    assert j["lhs"] == "1.57079632679489661923"
    assert len(j["abs_diff"].split(".")[1]) == 20


def test_family_twins(catalog):
    twins = check_twins(catalog.values(), 30)
    assert len(twins) >= 40
    for t in twins:
        assert abs(t.residual.value) <= Fraction(1, 10**29), t.id
