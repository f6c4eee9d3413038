#!/usr/bin/env python3
"""Dump exact Mano polynomial coefficient tables for a parameter sweep.

One CSV per (mu, ell) with columns j, k, numerator, denominator, plus a
summary of the exact squared norms under the orthogonality weight
x^{mu-2 ell} e^{-x} dx.

    python scripts/mano_tables.py --mu 1 3 5 --ell 0 1 --max-j 8
"""

import argparse
import csv
import pathlib

from minrep.specfun import mano_exact, norm_squared


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mu", type=int, nargs="+", default=[1, 3, 5])
    ap.add_argument("--ell", type=int, nargs="+", default=[0, 1])
    ap.add_argument("--max-j", type=int, default=8)
    ap.add_argument("--out-dir", default="mano_tables")
    args = ap.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    for mu in args.mu:
        for ell in args.ell:
            path = out_dir / f"mano_mu{mu}_ell{ell}.csv"
            with open(path, "w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["j", "k", "numerator", "denominator"])
                for j in range(args.max_j + 1):
                    poly = mano_exact(mu, ell, j)
                    for exps, c in sorted(poly.terms().items()):
                        frac = c.as_fraction()
                        w.writerow([j, exps[0], frac.numerator, frac.denominator])
            print(f"wrote {path}")
            if mu >= 2 * ell + 1:
                norms = [norm_squared("mano", (mu, ell, j)) for j in range(args.max_j + 1)]
                print(
                    f"  norms^2 (mu={mu}, ell={ell}):",
                    ", ".join(str(n.as_fraction()) for n in norms),
                )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
