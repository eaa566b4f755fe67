"""Command-line front end: ``binomsum <subcommand> ...``.

Exit codes: 0 success (all must-pass checks passed), 1 verification or domain
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from fractions import Fraction
from typing import Sequence

from .catalog import default_catalog_path, load_catalog, verify_all
from .closedform.expr import eval_expr, parse_expr
from .closedform.families import FAMILIES, family_instantiate
from .errors import BinomSumError
from .inversion import invert_c3, invert_c42
from .numkernel import PI_FORMULAS, FixedReal, const_pi, elem_eval, settle
from .oracle import QuadParams, quad_series
from .series import TermSpec, sum_binsplit, sum_digits_info, tail_bound


class UsageError(Exception):
    pass


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _rat_list(text: str) -> list[Fraction]:
    return [_rat(t) for t in text.split(",") if t.strip()]


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _emit(out, obj) -> None:
    out.write(json.dumps(obj, indent=None, sort_keys=False) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_sum(a, out) -> int:
    spec = TermSpec(a.m, a.n, a.x, tuple(a.num), e=a.e, f=a.f, k0=a.k0)
    t0 = time.perf_counter_ns()
    if a.terms is not None:
        last = spec.k0 + a.terms - 1
        val = sum_binsplit(spec, last)
        elapsed = time.perf_counter_ns() - t0
        text = str(val.numerator) if val.denominator == 1 else f"{val.numerator}/{val.denominator}"
        if a.format == "json":
            _emit(out, {"value": text, "terms_used": a.terms, "elapsed_ns": elapsed})
        else:
            out.write(text + "\n")
        return 0
    res = sum_digits_info(spec, a.digits)
    elapsed = time.perf_counter_ns() - t0
    if a.format == "json":
        _emit(out, {"value": res.value.to_decimal(), "digits": a.digits, "terms_used": res.terms_used, "elapsed_ns": elapsed})
    else:
        out.write(res.value.to_decimal() + "\n")
    return 0


def cmd_closed(a, out) -> int:
    v = eval_expr(parse_expr(a.expr), a.digits)
    if a.format == "json":
        _emit(out, {"expr": a.expr, "digits": a.digits, "value": v.to_decimal()})
    else:
        out.write(v.to_decimal() + "\n")
    return 0


def _report_line(r) -> str:
    tag = "PASS" if r.passed else ("TYPO" if r.status == "known-typo" else "FAIL")
    diff = "n/a" if r.abs_diff is None else f"{float(r.abs_diff.value):.2e}"
    line = f"{tag} {r.id} digits={r.digits} |diff|={diff} terms={r.terms_used} ms={r.elapsed_ns / 1e6:.1f}"
    if r.clamped_from is not None:
        line += f" (clamped from {r.clamped_from})"
    if r.reason and not r.passed:
        line += f" :: {r.reason}"
    return line


def cmd_verify(a, out) -> int:
    catalog = load_catalog(a.catalog)
    ids = None
    if not a.all:
        ids = [i for chunk in a.id for i in chunk.split(",") if i]
    summary = verify_all(a.digits, filter=ids, catalog=catalog)
    if a.format == "json":
        if ids is not None and len(ids) == 1:
            _emit(out, summary.reports[0].to_json())
        else:
            _emit(out, summary.to_json())
    else:
        for r in summary.reports:
            out.write(_report_line(r) + "\n")
        out.write(
            f"summary: {summary.pass_count} passed, {summary.fail_count} failed, "
            f"{len(summary.known_typo)} known-typo of {len(summary.reports)} entries at {a.digits} digits\n"
        )
    return 0 if summary.ok else 1


# constants through a series: value = (S - shift) / scale with S a catalog or family series
_PI_SERIES = {
    "gosper": (Fraction(0), Fraction(1, 2)),  # S = pi/2
    "akp-8-4": (Fraction(0), Fraction(11025)),
    "bellard": (Fraction(20379280), Fraction(740025)),
    "new-1": (Fraction(0), Fraction(4, 27)),  # S = (4/27) sqrt(3) pi, handled below
}


def _series_constant(spec: TermSpec, shift: Fraction, scale: Fraction, digits: int, extra=None) -> FixedReal:
    def compute(W: int) -> FixedReal:
        s = sum_digits_info(spec, W).value
        v = (s - FixedReal.exact(shift, W)) / FixedReal.exact(scale, W)
        return extra(v, W) if extra else v

    return settle(compute, digits, guard=3 + len(str(scale.numerator)))


def cmd_constant(a, out) -> int:
    D = a.digits
    via = a.via
    if a.name == "pi":
        if a.arg is not None:
            raise UsageError("--arg is only meaningful for --name log")
        via = via or "machin"
        if via in PI_FORMULAS:
            v = const_pi(D, via)
        elif via in _PI_SERIES:
            ident = {i.id: i for i in load_catalog(a.catalog)}[via]
            shift, scale = _PI_SERIES[via]
            if via == "new-1":
                v = _series_constant(
                    ident.lhs, shift, scale, D, extra=lambda s, W: s / elem_eval("sqrt", 3, W + 2).round_to(W)
                )
            else:
                v = _series_constant(ident.lhs, shift, scale, D)
        else:
            raise UsageError(f"unknown pi formula {via!r}; choose from {sorted(set(PI_FORMULAS) | set(_PI_SERIES))}")
    else:
        if a.arg is None:
            raise UsageError("--name log needs --arg p/q")
        x = a.arg
        if via is None:
            via = "logn" if FAMILIES["LOGN"].in_domain(x) else "builtin"
        if via == "builtin":
            v = elem_eval("log", x, D)
        elif via == "logn":
            ident = family_instantiate("LOGN", x)
            n = x
            scale = 6 * n * (n + 1) * (n - 1) ** 3
            shift = -32 * n * (n + 1) ** 2 * (n * n - 4 * n + 1)
            v = _series_constant(ident.lhs, shift, scale, D)
        else:
            raise UsageError(f"unknown log method {via!r}; choose from builtin, logn")
    if a.format == "json":
        _emit(out, {"name": a.name, "arg": None if a.arg is None else str(a.arg), "via": via, "digits": D, "value": v.to_decimal()})
    else:
        out.write(v.to_decimal() + "\n")
    return 0


def cmd_invert(a, out) -> int:
    if a.family == "c3":
        r = invert_c3(a.x0, a.digits)
        exact = r.exact
        value = r.value
    else:
        value = invert_c42(a.x0, a.digits)
        exact = value.value if value.err_ulp == 0 else None
    if exact is not None:
        text = (str(exact.numerator) if exact.denominator == 1 else f"{exact.numerator}/{exact.denominator}") + " (exact)"
    else:
        text = value.to_decimal()
    if a.format == "json":
        _emit(out, {"family": a.family, "x0": str(a.x0), "digits": a.digits, "value": value.to_decimal(), "exact": exact is not None})
    else:
        out.write(text + "\n")
    return 0


def cmd_oracle(a, out) -> int:
    p = QuadParams(a.m, a.n, a.a, a.b, a.x, a.tol)
    v = quad_series(p)
    if a.format == "json":
        _emit(out, {"value": v.to_decimal(), "digits": v.digits, "err_estimate": f"{float(v.abs_err):.3e}"})
    else:
        out.write(f"{v.to_decimal()} +- {float(v.abs_err):.1e}\n")
    return 0


BENCH_COLUMNS = ("id", "digits", "terms_used", "elapsed_ns", "digits_per_term")


def _log10(q: Fraction) -> float:
    return math.log10(q.numerator) - math.log10(q.denominator)


def bench_rows(ids: Sequence[str], levels: Sequence[int], catalog_path=None) -> list[dict]:
    """One row per (id, digits).

    digits_per_term is the least-squares slope of certified digits (minus
    log10 of the tail bound at the chosen cut-off) against terms used, over
    all requested levels for that id.  Using certified rather than requested
    digits removes the rounding of the cut-off to a whole term.
    """
    cat = {i.id: i for i in load_catalog(catalog_path)}
    missing = [i for i in ids if i not in cat]
    if missing:
        raise UsageError(f"unknown catalog ids: {missing}")
    levels = sorted(set(levels))
    rows = []
    for ident_id in ids:
        spec = cat[ident_id].lhs
        per = []
        for d in levels:
            t0 = time.perf_counter_ns()
            res = sum_digits_info(spec, d)
            ns = time.perf_counter_ns() - t0
            bound = tail_bound(spec, res.last_index).bound
            got = -_log10(bound) if bound else float(d + 1)
            per.append((d, res.terms_used, ns, got))
        if len(per) >= 2 and len({t for _, t, _, _ in per}) > 1:
            mt = sum(t for _, t, _, _ in per) / len(per)
            mg = sum(g for _, _, _, g in per) / len(per)
            sxx = sum((t - mt) ** 2 for _, t, _, _ in per)
            slope = sum((t - mt) * (g - mg) for _, t, _, g in per) / sxx
        else:
            _, t, _, g = per[-1]
            slope = g / t
        for d, terms, ns, _ in per:
            rows.append({"id": ident_id, "digits": d, "terms_used": terms, "elapsed_ns": ns, "digits_per_term": f"{slope:.4f}"})
    return rows


def cmd_bench(a, out) -> int:
    ids = [i for i in a.ids.split(",") if i]
    rows = bench_rows(ids, a.digits, a.catalog)
    if a.out == "json":
        _emit(out, rows)
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        out.write(buf.getvalue())
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="binomsum", description="Series of the type sum (ak+b) x^k / C(mk, nk).")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("sum", help="sum a series exactly or to a number of digits")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--num", type=_rat_list, required=True, help="numerator coefficients c0,c1,... (ascending)")
    p.add_argument("--e", type=int, default=0, help="power of k in the denominator")
    p.add_argument("--f", type=int, default=0, help="power of (2k-1) in the denominator")
    p.add_argument("--x", type=_rat, required=True)
    p.add_argument("--k0", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--terms", type=_positive, help="exact sum of the first N terms")
    g.add_argument("--digits", type=_positive)
    fmt(p)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("closed", help="evaluate a closed-form expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--digits", type=_positive, required=True)
    fmt(p)
    p.set_defaults(func=cmd_closed)

    p = sub.add_parser("verify", help="verify catalog identities")
    p.add_argument("--catalog", default=None, help=f"catalog path (default: $BINOM_CATALOG or {default_catalog_path().name})")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--id", action="append")
    g.add_argument("--all", action="store_true")
    p.add_argument("--digits", type=_positive, required=True)
    fmt(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("constant", help="compute pi or log(p/q)")
    p.add_argument("--name", choices=("pi", "log"), required=True)
    p.add_argument("--arg", type=_rat)
    p.add_argument("--digits", type=_positive, required=True)
    p.add_argument("--via", help="pi: machin|gauss|stormer|euler|gosper|akp-8-4|bellard|new-1; log: logn|builtin")
    p.add_argument("--catalog", default=None)
    fmt(p)
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("invert", help="family parameter for a series argument")
    p.add_argument("--family", choices=("c3", "c42"), required=True)
    p.add_argument("--x0", type=_rat, required=True)
    p.add_argument("--digits", type=_positive, required=True)
    fmt(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("oracle", help="beta-integral quadrature of sum_{k>=1} (ak+b) x^k / C(mk,nk)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_rat, required=True)
    p.add_argument("--b", type=_rat, required=True)
    p.add_argument("--x", type=_rat, required=True)
    p.add_argument("--tol", type=_rat, default=Fraction(1, 10**8))
    fmt(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="terms and time per digit level")
    p.add_argument("--ids", required=True)
    p.add_argument("--digits", type=_int_list, default=[20, 40, 80])
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    p.add_argument("--catalog", default=None)
    p.set_defaults(func=cmd_bench)
    return ap


# flags whose values may start with '-' (e.g. --num "-3,25")
_SIGNED_FLAGS = {"--num", "--x", "--x0", "--a", "--b", "--arg", "--expr"}


def _glue_signed(argv: Sequence[str]) -> list[str]:
    out, it = [], iter(argv)
    for tok in it:
        if tok in _SIGNED_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def run_cli(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    argv = _glue_signed(sys.argv[1:] if argv is None else argv)
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except KeyError as exc:
        err.write(f"error: {exc.args[0] if exc.args else exc}\n")
        return 1
    except (BinomSumError, ArithmeticError, ValueError, OSError) as exc:
        if getattr(args, "format", "text") == "json":
            _emit(out, {"error": type(exc).__name__, "message": str(exc)})
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run_cli())
