#!/usr/bin/env python3
"""Print the pre-normalization norm profile h_k of the monic recurrence.

The h_k collapse roughly like 2^-k, which is the whole reason build_basis
renormalizes at every step.  Run e.g.

    python scripts/monic_decay.py --omega 2pi*20 --n 10
"""

import argparse

from oscbasis import build_tables, monic_norm_profile, parse_omega_spec


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--omega", default="2pi*20")
    ap.add_argument("--n", type=int, default=10)
    args = ap.parse_args()

    freq = parse_omega_spec(args.omega)
    tables = build_tables(freq, args.n + 1)
    profile = monic_norm_profile(freq, args.n, tables)

    print(f"omega = {freq.omega:.6g}  (k={freq.k}, epsilon={freq.epsilon:g})")
    print(f"{'k':>3}  {'h_k':>24}  {'h_k/h_k-1':>10}")
    prev = None
    for k, h in enumerate(profile):
        ratio = "" if prev is None else f"{h / prev:10.6f}"
        print(f"{k:>3}  {h:24.17e}  {ratio:>10}")
        prev = h


if __name__ == "__main__":
    main()
