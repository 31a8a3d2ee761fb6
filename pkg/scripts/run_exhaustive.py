#!/usr/bin/env python3
"""Exhaustive desk-scale verification of the three star-cycle statements.

Runs every connected labeled graph of the chosen orders against the
size, adjacency, and distance thresholds, then cross-checks the factor
oracles against each other.  Default orders 4-7 finish in about a
minute; --large adds the order-8 sweep (minutes, vectorized path only).

Usage:
    python3 scripts/run_exhaustive.py [--orders 4-7] [--large]
        [--report-dir reports/]
"""

import argparse
import pathlib
import sys
import time

from spectral_factors.cli import parse_orders
from spectral_factors.verify import (RunConfig, run_oracle_check, run_verify,
                                     summary_lines)

STATEMENTS = ("1.3", "1.4", "1.5")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", default="4-7")
    ap.add_argument("--large", action="store_true",
                    help="include the order-8 sweep")
    ap.add_argument("--report-dir", default=None,
                    help="write per-statement record files here")
    ap.add_argument("--emit", default="exceptional",
                    choices=("all", "exceptional", "violations"))
    args = ap.parse_args()

    orders = parse_orders(args.orders)
    if args.large and 8 not in orders:
        orders = orders + (8,)
    report_dir = pathlib.Path(args.report_dir) if args.report_dir else None
    if report_dir:
        report_dir.mkdir(parents=True, exist_ok=True)

    failures = 0
    t0 = time.time()
    for thm in STATEMENTS:
        out = None
        if report_dir:
            out = str(report_dir / f"statement-{thm.replace('.', '_')}.jsonl")
        cfg = RunConfig(command="verify", theorem=thm, orders=orders,
                        out=out, emit=args.emit, allow_large=args.large)
        summary = run_verify(cfg)
        for line in summary_lines(cfg, summary):
            print(line)
        if summary.violations:
            print(f"!! statement {thm}: {summary.violations} violation(s)")
            failures += 1

    oracle_orders = tuple(n for n in range(2, 8) if n <= max(orders))
    oracle = run_oracle_check(oracle_orders, allow_large=False)
    print(f"oracle sweep orders {oracle_orders}: {oracle.graphs} graphs, "
          f"{oracle.matching_checked} matching checks, "
          f"{len(oracle.discrepancies)} discrepancies, "
          f"{oracle.wall_time:.1f}s")
    for line in oracle.discrepancies[:20]:
        print(f"  !! {line}")
    if oracle.discrepancies:
        failures += 1

    print(f"total wall {time.time() - t0:.1f}s; "
          f"{'CLEAN' if not failures else f'{failures} FAILURE GROUP(S)'}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
