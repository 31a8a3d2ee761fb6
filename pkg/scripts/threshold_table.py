#!/usr/bin/env python3
"""Tabulate every threshold against its extremal family.

For each order in the range: the size cutoff, the cubic root, the
effective adjacency cutoff, and the distance cutoff, next to the
extremal graph's measured spectra, so sharpness is visible line by
line.  Columns agree within float tolerance by construction; the script
asserts it.

Usage:
    python3 scripts/threshold_table.py [--orders 4-14] [--csv out.csv]
"""

import argparse
import sys

from spectral_factors.cli import parse_orders
from spectral_factors.graphs import from_family
from spectral_factors.spectra import mu1, rho
from spectral_factors.theorems import extremal_star_cycle_family, sweep_row

HEADER = ("nu", "family", "size_thr", "m_ext", "beta", "rho_thr", "rho_ext",
          "mu1_thr", "mu1_ext")


def rows_for(orders):
    for nu in orders:
        spec = extremal_star_cycle_family(nu)
        g = from_family(spec)
        base = sweep_row(nu)
        r_ext = rho(g).value
        d_ext = mu1(g).value
        assert g.num_edges == base["size"], (nu, g.num_edges, base["size"])
        assert abs(r_ext - base["rho_threshold"]) < 1e-8, nu
        assert abs(d_ext - base["mu1_threshold"]) < 1e-8, nu
        yield (nu, str(spec), base["size"], g.num_edges, base["beta"],
               base["rho_threshold"], r_ext, base["mu1_threshold"], d_ext)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", default="4-14")
    ap.add_argument("--csv", default=None, help="also write a CSV file")
    args = ap.parse_args()
    orders = parse_orders(args.orders)
    for nu in orders:
        if nu < 4:
            ap.error("orders must be >= 4")

    table = list(rows_for(orders))
    widths = [max(len(str(c)) for c in [h] + [r[i] for r in table])
              for i, h in enumerate(HEADER)]

    def fmt(cells):
        out = []
        for i, c in enumerate(cells):
            s = f"{c:.6f}" if isinstance(c, float) else str(c)
            out.append(s.rjust(max(widths[i], len(s))))
        return "  ".join(out)

    print(fmt(HEADER))
    for r in table:
        print(fmt(r))

    if args.csv:
        with open(args.csv, "w", encoding="ascii") as fh:
            fh.write(",".join(HEADER) + "\n")
            for r in table:
                fh.write(",".join(f"{c:.10g}" if isinstance(c, float)
                                  else str(c) for c in r) + "\n")
        print(f"wrote {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
