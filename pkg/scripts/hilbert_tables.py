"""Cohomology tables of (g, g0), (f, f0) and (f~, f~0) with trivial coefficients.

    python3 scripts/hilbert_tables.py --n 2..4 --max-degree 8 --out tables.json
"""
import argparse
import json
import time

from wncohom.cli import parse_n_range
from wncohom.cohomology import DEFAULT_LIMIT, PAIRS, cohomology_table, expected_f_series, expected_g_series, \
    invariant_hilbert_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", default="2..3")
    ap.add_argument("--max-degree", type=int, default=8)
    ap.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    ap.add_argument("--out")
    args = ap.parse_args()
    rows = []
    for n in parse_n_range(args.n):
        expected = {"g:g0": expected_g_series(n, args.max_degree), "f:f0": expected_f_series(n, args.max_degree)}
        for pair in PAIRS:
            t = time.perf_counter()
            table = cohomology_table(n, pair, args.max_degree, limit=args.limit)
            print(table.to_text(), f"  ({time.perf_counter() - t:.1f}s)")
            if pair in expected:
                print("expected", expected[pair])
            rows.append(table.to_json())
        inv = invariant_hilbert_table(n, args.max_degree, limit=args.limit)
        print("invariants of (g-1+g1)*:", inv.sequence())
        rows.append(inv.to_json())
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
