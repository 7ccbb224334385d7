#!/usr/bin/env python3
"""Tabulate availability and profit rate against the patience time T.

Produces the data behind the model-comparison curves: all four models on a
common T grid at the reference parameter set (override via flags).  Writes
CSV with one row per model per grid point.

    python scripts/availability_profit_curves.py --out curves.csv
"""

import argparse

from coldstandby import CostParams, RateParams, SweepGrid, sweep
from coldstandby.cli import _fmt, _write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambda", dest="lam", type=float, default=0.5)
    ap.add_argument("--alpha", type=float, default=0.3)
    ap.add_argument("--beta", type=float, default=0.35)
    ap.add_argument("--gamma", type=float, default=0.75)
    ap.add_argument("--net-revenue", dest="net", type=float, default=20.0)
    ap.add_argument("--cr", type=float, default=1.0)
    ap.add_argument("--ce", type=float, default=5.0)
    ap.add_argument("--cl", type=float, default=3.0)
    ap.add_argument("--grid", default="0.2:5.0:100")
    ap.add_argument("--out", default=None, help="CSV path (default: stdout)")
    args = ap.parse_args()

    start, stop, points = args.grid.split(":")[:3]
    grid = SweepGrid(float(start), float(stop), int(points))
    rows = sweep(["mre-rpt", "sre-rpt", "mre-dpt", "sre-dpt"],
                 RateParams(args.lam, args.beta, args.gamma), args.alpha,
                 CostParams(args.net, args.cr, args.ce, args.cl), grid)
    _write_csv(args.out, ["model", "T", "a_inf", "theta_r", "theta_e", "tau", "omega"],
               [[r.model, _fmt(r.T), _fmt(r.a_inf), _fmt(r.theta_r), _fmt(r.theta_e),
                 _fmt(r.tau), _fmt(r.omega)] for r in rows])


if __name__ == "__main__":
    main()
