"""Identity catalog: JSON loading, schema checks and the verification driver."""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable

from .closedform.expr import eval_expr, parse_expr
from .closedform.families import Identity, family_instantiate, parse_family_tag, twin_residual
from .errors import BinomSumError, ConvergenceError, ParseError, SchemaError, SpecError
from .numkernel import FixedReal
from .series import TermSpec, sum_digits_info

ENV_VAR = "BINOM_CATALOG"
REQUIRED = ("id", "m", "n", "x", "num_coeffs", "e", "f", "k0", "rhs", "domain_note", "paper_ref", "status")
OPTIONAL = ("family", "max_digits")
STATUSES = ("verified", "pending", "known-typo")
GUARD = 5


def default_catalog_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("binomsum") / "data" / "catalog.json"))


def _rational(v, eid, fld) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise SchemaError(f"expected a rational string 'p/q', got {v!r}", eid, fld)
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"not a rational: {v!r}", eid, fld) from None


def _int(rec, eid, fld) -> int:
    v = rec[fld]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"expected an integer, got {v!r}", eid, fld)
    return v


def identity_from_record(rec: dict) -> Identity:
    if not isinstance(rec, dict):
        raise SchemaError("entry is not an object")
    eid = rec.get("id")
    if not isinstance(eid, str) or not eid:
        raise SchemaError("missing or empty id", None, "id")
    for fld in REQUIRED:
        if fld not in rec:
            raise SchemaError("missing field", eid, fld)
    unknown = set(rec) - set(REQUIRED) - set(OPTIONAL)
    if unknown:
        raise SchemaError(f"unknown fields {sorted(unknown)}", eid)
    m, n = _int(rec, eid, "m"), _int(rec, eid, "n")
    if not 0 < n < m:
        raise SchemaError(f"need 0 < n < m, got m={m}, n={n}", eid, "n")
    coeffs = rec["num_coeffs"]
    if not isinstance(coeffs, list) or not coeffs:
        raise SchemaError("num_coeffs must be a nonempty list", eid, "num_coeffs")
    num = tuple(_rational(c, eid, "num_coeffs") for c in coeffs)
    x = _rational(rec["x"], eid, "x")
    e, f, k0 = (_int(rec, eid, k) for k in ("e", "f", "k0"))
    try:
        spec = TermSpec(m, n, x, num, e=e, f=f, k0=k0)
    except ConvergenceError as exc:
        raise ConvergenceError(f"[{eid}] {exc}") from None
    except SpecError as exc:
        raise SchemaError(str(exc), eid, "spec") from None
    if not isinstance(rec["rhs"], str):
        raise SchemaError("rhs must be a string", eid, "rhs")
    try:
        rhs = parse_expr(rec["rhs"])
    except ParseError as exc:
        raise SchemaError(f"rhs does not parse: {exc}", eid, "rhs") from None
    status = rec["status"]
    if status not in STATUSES:
        raise SchemaError(f"status must be one of {STATUSES}", eid, "status")
    for fld in ("domain_note", "paper_ref"):
        if not isinstance(rec[fld], str):
            raise SchemaError("must be a string", eid, fld)
    fam = rec.get("family")
    if fam is not None:
        try:
            parse_family_tag(fam)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"bad family tag {fam!r}", eid, "family") from None
    md = rec.get("max_digits")
    if md is not None and (isinstance(md, bool) or not isinstance(md, int) or md < 1):
        raise SchemaError("max_digits must be a positive integer", eid, "max_digits")
    return Identity(eid, spec, rhs, rec["domain_note"], rec["paper_ref"], status, fam, md)


def parse_catalog(doc) -> list[Identity]:
    if not isinstance(doc, dict) or "entries" not in doc or "version" not in doc:
        raise SchemaError("catalog must be an object with 'version' and 'entries'")
    if not isinstance(doc["entries"], list):
        raise SchemaError("'entries' must be a list")
    out, seen = [], set()
    for rec in doc["entries"]:
        ident = identity_from_record(rec)
        if ident.id in seen:
            raise SchemaError("duplicate id", ident.id, "id")
        seen.add(ident.id)
        out.append(ident)
    return out


def load_catalog(path: str | os.PathLike | None = None) -> list[Identity]:
    p = Path(path) if path is not None else default_catalog_path()
    with open(p, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON in {p}: {exc}") from None
    return parse_catalog(doc)


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerifyReport:
    id: str
    digits: int
    lhs: FixedReal | None
    rhs: FixedReal | None
    abs_diff: FixedReal | None
    passed: bool
    terms_used: int
    elapsed_ns: int
    status: str = "verified"
    reason: str | None = None
    clamped_from: int | None = None

    def to_json(self) -> dict:
        def dec(v: FixedReal | None):
            return None if v is None else v.round_to(self.digits).to_decimal()

        out = {
            "id": self.id,
            "digits": self.digits,
            "lhs": dec(self.lhs),
            "rhs": dec(self.rhs),
            "abs_diff": dec(self.abs_diff),
            "pass": self.passed,
            "terms_used": self.terms_used,
            "elapsed_ns": self.elapsed_ns,
        }
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def verify_identity(ident: Identity, digits: int) -> VerifyReport:
    """Compare both sides at digits + 5; pass iff |lhs - rhs| <= 10^(1-digits)."""
    if digits < 1:
        raise ValueError("digits must be positive")
    W = digits + GUARD
    t0 = time.perf_counter_ns()
    lhs = rhs = diff = None
    terms = 0
    try:
        res = sum_digits_info(ident.lhs, W)
        lhs, terms = res.value, res.terms_used
        rhs = eval_expr(ident.rhs, W)
        diff = abs(lhs - rhs)
        ok = abs(diff.value) <= Fraction(10) / 10**digits
        reason = None if ok else f"|lhs - rhs| = {float(diff.value):.3e} exceeds 1e{1 - digits}"
    except (BinomSumError, ArithmeticError, ValueError) as exc:
        ok = False
        reason = f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter_ns() - t0
    return VerifyReport(ident.id, digits, lhs, rhs, diff, ok, terms, elapsed, ident.status, reason)


@dataclass
class VerifySummary:
    digits: int
    reports: list[VerifyReport] = field(default_factory=list)

    @property
    def must_pass(self) -> list[VerifyReport]:
        return [r for r in self.reports if r.status != "known-typo"]

    @property
    def pass_count(self) -> int:
        return sum(r.passed for r in self.must_pass)

    @property
    def fail_count(self) -> int:
        return sum(not r.passed for r in self.must_pass)

    @property
    def known_typo(self) -> list[VerifyReport]:
        return [r for r in self.reports if r.status == "known-typo"]

    @property
    def clamped(self) -> list[VerifyReport]:
        return [r for r in self.reports if r.clamped_from is not None]

    @property
    def ok(self) -> bool:
        return self.fail_count == 0

    def to_json(self) -> dict:
        return {
            "digits": self.digits,
            "entries": len(self.reports),
            "pass_count": self.pass_count,
            "fail_count": self.fail_count,
            "known_typo": [r.id for r in self.known_typo],
            "clamped": [{"id": r.id, "requested": r.clamped_from, "used": r.digits} for r in self.clamped],
            "reports": [r.to_json() for r in self.reports],
        }


def verify_all(
    digits: int,
    filter: Iterable[str] | None = None,
    catalog: list[Identity] | None = None,
    path: str | os.PathLike | None = None,
) -> VerifySummary:
    """Verify every entry (or the ``filter`` ids); reports are sorted by id."""
    idents = catalog if catalog is not None else load_catalog(path)
    wanted = None if filter is None else set(filter)
    if wanted is not None:
        missing = wanted - {i.id for i in idents}
        if missing:
            raise KeyError(f"unknown catalog ids: {sorted(missing)}")
    summary = VerifySummary(digits)
    for ident in sorted(idents, key=lambda i: i.id):
        if wanted is not None and ident.id not in wanted:
            continue
        d = digits
        if ident.max_digits is not None and digits > ident.max_digits:
            d = ident.max_digits
        rep = verify_identity(ident, d)
        if d != digits:
            rep.clamped_from = digits
        summary.reports.append(rep)
    return summary


@dataclass(frozen=True)
class TwinCheck:
    id: str
    family: str
    scalar: Fraction
    residual: FixedReal


def check_twins(idents: Iterable[Identity], digits: int = 30) -> list[TwinCheck]:
    """Value-match each tagged entry against its family-generated identity."""
    out = []
    for ident in idents:
        if not ident.family:
            continue
        name, param = parse_family_tag(ident.family)
        gen = family_instantiate(name, param)
        lam, res = twin_residual(gen, ident, digits)
        out.append(TwinCheck(ident.id, ident.family, lam, res))
    return out
