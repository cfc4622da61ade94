#!/usr/bin/env python3
"""Map orthogonality quality over an (omega, N) grid.

For each combination this builds the basis and reports the worst Gram
deviation max|<row_i, row_j> - delta_ij| measured by quadrature, or the
member index where the recurrence degenerated.  CSV goes to --out,
a readable table to stdout.
"""

import argparse
import sys
import warnings

import numpy as np

from oscbasis import (
    BasisDegenerationError,
    Frequency,
    StabilityWarning,
    build_basis,
    build_tables,
)
from oscbasis.oracle import member_gram


def sweep_cell(k: int, n: int) -> str:
    freq = Frequency.exact(k)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", StabilityWarning)
        tables = build_tables(freq, n + 1)
        try:
            basis = build_basis(freq, n, tables)
        except BasisDegenerationError as exc:
            member = str(exc).split("member ")[1].split(":")[0]
            return f"degenerate@{member}"
    G = member_gram(basis.rep, freq.omega)
    dev = np.max(np.abs(G - np.eye(G.shape[0])))
    return f"{dev:.3e}"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--periods", default="2,3,5,10,20,50",
                    help="comma list of k values (omega = 2pi*k)")
    ap.add_argument("--degrees", default="4,8,12,16,20,24",
                    help="comma list of N values")
    ap.add_argument("--out", default=None, help="optional CSV path")
    args = ap.parse_args()

    ks = [int(s) for s in args.periods.split(",")]
    ns = [int(s) for s in args.degrees.split(",")]

    rows = []
    header = ["omega"] + [f"N={n}" for n in ns]
    print("  ".join(f"{h:>14}" for h in header))
    for k in ks:
        cells = [sweep_cell(k, n) for n in ns]
        rows.append([f"2pi*{k}"] + cells)
        print("  ".join(f"{c:>14}" for c in rows[-1]))

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(row) + "\n")
        print(f"wrote {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
