#!/usr/bin/env python3
"""Tabulate the inversion kernel PhiHat^{p,q} on a t-grid.

Writes the kernel-tabulation CSV (t, value, method, est_error) for one or
more signatures, evaluating with both the residue and the contour method
so the table doubles as a consistency experiment.

    python scripts/tabulate_kernel.py --pairs 3,1 4,4 --t-min 0.05 \
        --t-max 2.0 --count 40 --out-dir kernel_tables
"""

import argparse
import csv
import pathlib

from minrep.kernel import tabulate


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", nargs="+", default=["3,1", "3,3", "4,4"],
                    help="signatures as p,q")
    ap.add_argument("--t-min", type=float, default=0.05)
    ap.add_argument("--t-max", type=float, default=2.0)
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--out-dir", default="kernel_tables")
    args = ap.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    step = (args.t_max - args.t_min) / max(args.count - 1, 1)
    ts = [args.t_min + i * step for i in range(args.count)]

    for pair in args.pairs:
        p, q = (int(v) for v in pair.split(","))
        path = out_dir / f"phi_{p}_{q}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "value", "method", "est_error"])
            for method in ("residue", "contour"):
                for kv in tabulate(p, q, ts, method=method):
                    w.writerow(
                        [
                            format(kv.t, ".17g"),
                            format(kv.value, ".17g"),
                            kv.method,
                            format(kv.est_error, ".17g"),
                        ]
                    )
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
