#!/usr/bin/env python3
"""Verify the whole catalog and check every family-tagged entry against its generated twin.

    python3 scripts/verify_catalog.py [--digits 40] [--twin-digits 30]
"""

import argparse
import sys
import time

from binomsum.catalog import check_twins, load_catalog, verify_all


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--digits", type=int, default=40)
    ap.add_argument("--twin-digits", type=int, default=30)
    ap.add_argument("--catalog")
    a = ap.parse_args()
    cat = load_catalog(a.catalog)
    t0 = time.perf_counter()
    summary = verify_all(a.digits, catalog=cat)
    wall = time.perf_counter() - t0
    for r in summary.reports:
        tag = "PASS" if r.passed else ("TYPO" if r.status == "known-typo" else "FAIL")
        diff = "n/a" if r.abs_diff is None else f"{float(r.abs_diff.value):.1e}"
        clamp = f" (clamped from {r.clamped_from})" if r.clamped_from else ""
        print(f"{tag} {r.id:<28} D={r.digits:<3} terms={r.terms_used:<7} |diff|={diff}{clamp}")
    print(f"\n{summary.pass_count} passed, {summary.fail_count} failed, {len(summary.known_typo)} known-typo, {wall:.2f} s")

    twins = check_twins(cat, a.twin_digits)
    bad = [t for t in twins if t.residual.sign() != 0 and abs(t.residual.value) > 10 ** (1 - a.twin_digits)]
    print(f"{len(twins)} family twins checked at {a.twin_digits} digits, {len(bad)} mismatched")
    for t in bad:
        print(f"  twin mismatch {t.id} ({t.family}): residual {float(t.residual.value):.3e}")
    return 0 if summary.ok else 1


if __name__ == "__main__":
    sys.exit(main())
