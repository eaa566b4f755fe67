#!/usr/bin/env python3
"""Convergence benchmark: terms and time per digit level, compared with -log10 rho_inf.

    python3 scripts/run_bench.py [--ids gosper,logn-2,akp-8-4] [--digits 20,40,80,160] [--csv out.csv]
"""

import argparse
import csv
import math
import sys

from binomsum.catalog import load_catalog
from binomsum.cli import BENCH_COLUMNS, bench_rows


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--ids", default="gosper,logn-2,akp-8-4,bellard")
    ap.add_argument("--digits", default="20,40,80,160")
    ap.add_argument("--csv", help="also write the raw rows here")
    a = ap.parse_args()
    ids = a.ids.split(",")
    levels = [int(d) for d in a.digits.split(",")]
    rows = bench_rows(ids, levels)
    cat = {i.id: i for i in load_catalog()}
    print(f"{'id':<12}{'digits':>8}{'terms':>8}{'ms':>10}{'dpt':>9}{'-log10 rho':>12}{'rel':>8}")
    for r in rows:
        ref = -math.log10(cat[r["id"]].lhs.rho_inf)
        dpt = float(r["digits_per_term"])
        print(f"{r['id']:<12}{r['digits']:>8}{r['terms_used']:>8}{r['elapsed_ns'] / 1e6:>10.2f}{dpt:>9.4f}{ref:>12.4f}{dpt / ref - 1:>+8.2%}")
    if a.csv:
        with open(a.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
            w.writeheader()
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
