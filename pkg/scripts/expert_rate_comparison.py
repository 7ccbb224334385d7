#!/usr/bin/env python3
"""Profit of the two expert policies as the expert's cost rate varies.

Sweeps c_e, prints the break-even rate for each patience policy, and writes
the curve data as CSV.

    python scripts/expert_rate_comparison.py --out expert_rate.csv
"""

import argparse

import numpy as np

from coldstandby import (CostParams, RateParams, SweepGrid, evaluate_model,
                         expert_cost_threshold, make_spec)
from coldstandby.cli import _fmt, _write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambda", dest="lam", type=float, default=0.5)
    ap.add_argument("--alpha", type=float, default=0.3)
    ap.add_argument("--beta", type=float, default=0.35)
    ap.add_argument("--gamma", type=float, default=0.75)
    ap.add_argument("--patience", dest="T", type=float, default=1.5,
                    help="T for the deterministic-patience panel")
    ap.add_argument("--ce-max", type=float, default=50.0)
    ap.add_argument("--points", type=int, default=101)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    rates = RateParams(args.lam, args.beta, args.gamma)
    base = CostParams(20.0, 1.0, 0.0, 3.0)
    grid = SweepGrid(0.0, args.ce_max, 512)
    rows = []
    for label, alpha, T in (("rpt", args.alpha, None), ("dpt", None, args.T)):
        ce_star = expert_cost_threshold(rates, alpha, T, base, grid)
        print(f"{label}: policies break even at c_e = {ce_star:.6f}")
        for ce in np.linspace(0.0, args.ce_max, args.points):
            costs = CostParams(20.0, 1.0, float(ce), 3.0)
            w_m = evaluate_model(make_spec(f"mre-{label}", rates, alpha=alpha, T=T),
                                 costs).omega
            w_s = evaluate_model(make_spec(f"sre-{label}", rates, alpha=alpha, T=T),
                                 costs).omega
            rows.append([label, _fmt(ce), _fmt(w_m), _fmt(w_s)])
    _write_csv(args.out, ["patience", "c_e", "omega_mre", "omega_sre"], rows)


if __name__ == "__main__":
    main()
