"""One-shot reproduction of the reference comparison study.

Runs every headline check at the reference parameter set (failure rate 0.5,
random-patience rate 0.3, regular-repair rate 0.35, expert rate 0.75; net
revenue 20, wages 1 and 5, trip charge 3), prints one PASS/FAIL line per
check, and writes the sweep data behind the comparison figures as CSV.

One reference target is internally inconsistent and its check fails by
design: the stated one-spare availability for the multiple-repair policy
(0.79) cannot be reconciled with the stated one-spare profit rates (12.48
and 11.92), which this model reproduces exactly with availability 0.76.  See
the README for details.
"""

from __future__ import annotations

import os

import numpy as np

from .cli import EXIT_CHECK_FAILED, EXIT_IO, EXIT_OK, CliError, _fmt, _write_csv
from .model import MODEL_IDS, RateParams, make_spec
from .optimize import (NoSignChange, SweepGrid, expert_cost_threshold,
                       find_equal_availability_T, find_profit_crossings,
                       maximize_profit_T, sweep, t_star_one_spare)
from .simulate import SimConfig, simulate
from .solver import CostParams, availability, evaluate_model

REF_RATES = RateParams(lam=0.5, beta=0.35, gamma=0.75)
REF_ALPHA = 0.3
REF_COSTS = CostParams(net_revenue_rate=20.0, c_r=1.0, c_e=5.0, c_l=3.0)

# two-decimal reference anchors carry a printed-rounding slack of half a cent
ROUNDING = 0.005


class _Checks:
    def __init__(self):
        self.results: list[tuple[str, bool, str]] = []

    def add(self, name: str, ok: bool, detail: str) -> None:
        self.results.append((name, bool(ok), detail))

    def report(self) -> bool:
        width = max(len(name) for name, _, _ in self.results)
        all_ok = True
        for name, ok, detail in self.results:
            tag = "PASS" if ok else "FAIL"
            all_ok &= ok
            print(f"[{tag}] {name:<{width}}  {detail}")
        return all_ok


def _near(value: float, target: float, tol: float) -> bool:
    return abs(value - target) <= tol


def _analytic_checks(checks: _Checks) -> None:
    grid = SweepGrid(0.2, 5.0, 512)

    for fam, t_target, a_target in (("mre", 1.62, 0.84), ("sre", 1.66, 0.80)):
        res = find_equal_availability_T(fam, REF_RATES, REF_ALPHA, grid)
        root = res.roots[0]
        a = availability(make_spec(f"{fam}-dpt", REF_RATES, T=root))
        checks.add(f"equal-availability ({fam})",
                   len(res.roots) == 1 and _near(root, t_target, 0.02)
                   and _near(a, a_target, 0.005),
                   f"T={root:.6f} (target {t_target}+-0.02)  "
                   f"A_inf={a:.6f} (target {a_target}+-0.005)")

    t_star = t_star_one_spare(REF_RATES.lam, REF_RATES.beta, REF_ALPHA)
    checks.add("one-spare equalizing T", _near(t_star, 1.58, 0.005),
               f"T*={t_star:.6f} (target 1.58+-0.005)")

    for fam, root_targets, w_target in (("mre", (1.45, 3.26), 14.07),
                                        ("sre", (1.45, 3.29), 13.64)):
        res = find_profit_crossings(fam, REF_RATES, REF_ALPHA, REF_COSTS, grid)
        w_rpt = evaluate_model(make_spec(f"{fam}-rpt", REF_RATES, alpha=REF_ALPHA),
                               REF_COSTS).omega
        ok = (len(res.roots) == 2
              and all(_near(r, t, 0.05) for r, t in zip(res.roots, root_targets))
              and _near(w_rpt, w_target, 0.02))
        checks.add(f"profit crossings ({fam})", ok,
                   f"T={', '.join(f'{r:.6f}' for r in res.roots)} "
                   f"(targets {root_targets[0]}/{root_targets[1]}+-0.05)  "
                   f"omega={w_rpt:.6f} (target {w_target}+-0.02)")

    for fam, w_target in (("mre", 14.08), ("sre", 13.65)):
        t_opt, w_opt = maximize_profit_T(fam, REF_RATES, REF_COSTS, grid)
        checks.add(f"profit maximum ({fam}-dpt)",
                   _near(t_opt, 2.19, 0.02) and _near(w_opt, w_target, 0.02),
                   f"T={t_opt:.6f} (target 2.19+-0.02)  "
                   f"omega={w_opt:.6f} (target {w_target}+-0.02)")

    ts = np.linspace(0.2, 5.0, 100)
    rows = sweep(list(MODEL_IDS), REF_RATES, REF_ALPHA, REF_COSTS,
                 SweepGrid(0.2, 5.0, 100))
    by_model = {m: [r for r in rows if r.model == m] for m in MODEL_IDS}
    a_ok = all(m.a_inf > s.a_inf for m, s in zip(by_model["mre-dpt"], by_model["sre-dpt"])) \
        and all(m.a_inf > s.a_inf for m, s in zip(by_model["mre-rpt"], by_model["sre-rpt"]))
    w_ok = all(m.omega > s.omega for m, s in zip(by_model["mre-dpt"], by_model["sre-dpt"])) \
        and all(m.omega > s.omega for m, s in zip(by_model["mre-rpt"], by_model["sre-rpt"]))
    checks.add("multiple-repair dominance", a_ok and w_ok,
               f"A_inf and omega higher under mre on all {len(ts)} grid points")

    rpt = evaluate_model(make_spec("mre-rpt", REF_RATES, alpha=REF_ALPHA), REF_COSTS)
    window = np.linspace(1.45, 1.62, 20)
    margins_a, margins_w = [], []
    for t in window:
        sol = evaluate_model(make_spec("mre-dpt", REF_RATES, T=float(t)), REF_COSTS)
        margins_a.append(sol.a_inf - rpt.a_inf)
        margins_w.append(sol.omega - rpt.omega)
    checks.add("joint-optimum window [1.45, 1.62]",
               min(margins_a) >= -1e-9 and min(margins_w) >= -1e-9,
               f"min availability margin {min(margins_a):.2e}, "
               f"min profit margin {min(margins_w):.2e}")

    ce_grid = SweepGrid(0.0, 50.0, 512)
    for label, alpha, T in (("rpt", REF_ALPHA, None), ("dpt T=1.5", None, 1.5)):
        try:
            ce_star = expert_cost_threshold(REF_RATES, alpha, T,
                                            CostParams(20.0, 1.0, 0.0, 3.0), ce_grid)
            at5 = _omega_gap(alpha, T, 5.0)
            checks.add(f"expert cost threshold ({label})", at5 > 0,
                       f"single crossing at c_e={ce_star:.6f}; "
                       f"omega gap at c_e=5 is {at5:+.4f}")
        except (NoSignChange, ValueError) as exc:
            checks.add(f"expert cost threshold ({label})", False, str(exc))


def _omega_gap(alpha, T, ce: float) -> float:
    costs = CostParams(20.0, 1.0, ce, 3.0)
    w_m = evaluate_model(make_spec("mre-rpt" if alpha else "mre-dpt",
                                   REF_RATES, alpha=alpha, T=T), costs).omega
    w_s = evaluate_model(make_spec("sre-rpt" if alpha else "sre-dpt",
                                   REF_RATES, alpha=alpha, T=T), costs).omega
    return w_m - w_s


def _simulation_checks(checks: _Checks, horizon: float, reps: int, seed: int) -> None:
    t_star = t_star_one_spare(REF_RATES.lam, REF_RATES.beta, REF_ALPHA)

    def run(model, spares, seed_offset):
        spec = make_spec(model, REF_RATES, alpha=REF_ALPHA, T=t_star)
        config = SimConfig(spares=spares, horizon=horizon, seed=seed + seed_offset,
                           replications=reps)
        return simulate(spec, REF_COSTS, config), spec

    for i, model in enumerate(MODEL_IDS):
        est, spec = run(model, 2, i)
        sol = evaluate_model(spec, REF_COSTS)
        targets = {"a_inf": sol.a_inf, "theta_r": sol.theta_r, "theta_e": sol.theta_e,
                   "tau": sol.tau, "visit_rate": 1.0 / sol.tau, "omega": sol.omega}
        zs = {q: abs(getattr(est, q).value - t) / getattr(est, q).se
              for q, t in targets.items()}
        worst = max(zs, key=zs.get)
        checks.add(f"simulation vs analytic ({model})", all(z <= 3 for z in zs.values()),
                   f"worst |z| = {zs[worst]:.2f} ({worst})")

        est1, _ = run(model, 1, 10 + i)
        gap_a = est.a_inf.value - est1.a_inf.value
        se_a = float(np.hypot(est.a_inf.se, est1.a_inf.se))
        gap_w = est.omega.value - est1.omega.value
        se_w = float(np.hypot(est.omega.se, est1.omega.se))
        checks.add(f"two spares beat one ({model})",
                   gap_a > 3 * se_a and gap_w > 3 * se_w,
                   f"dA={gap_a:.4f} ({gap_a / se_a:.0f} se), "
                   f"domega={gap_w:.4f} ({gap_w / se_w:.0f} se)")

        if model == "sre-dpt":
            a, se = est1.a_inf
            checks.add("one-spare availability anchor (sre)",
                       abs(a - 0.74) <= ROUNDING + 3 * se,
                       f"A_inf={a:.4f}+-{se:.1g} (target 0.74+-{ROUNDING}+3se)")
        if model == "mre-dpt":
            a, se = est1.a_inf
            checks.add("one-spare availability anchor (mre)",
                       abs(a - 0.79) <= ROUNDING + 3 * se,
                       f"A_inf={a:.4f}+-{se:.1g} (target 0.79+-{ROUNDING}+3se; "
                       f"inconsistent reference value, see README)")


def _write_figures(outdir: str) -> None:
    rows = sweep(list(MODEL_IDS), REF_RATES, REF_ALPHA, REF_COSTS, SweepGrid(0.2, 5.0, 100))
    _write_csv(os.path.join(outdir, "availability_profit_vs_T.csv"),
               ["model", "T", "a_inf", "theta_r", "theta_e", "tau", "omega"],
               [[r.model, _fmt(r.T), _fmt(r.a_inf), _fmt(r.theta_r), _fmt(r.theta_e),
                 _fmt(r.tau), _fmt(r.omega)] for r in rows])
    ce_rows = []
    for label, alpha, T in (("rpt", REF_ALPHA, None), ("dpt1.5", None, 1.5)):
        for ce in np.linspace(0.0, 50.0, 101):
            costs = CostParams(20.0, 1.0, float(ce), 3.0)
            w_m = evaluate_model(make_spec(f"mre-{label[:3]}", REF_RATES,
                                           alpha=alpha, T=T), costs).omega
            w_s = evaluate_model(make_spec(f"sre-{label[:3]}", REF_RATES,
                                           alpha=alpha, T=T), costs).omega
            ce_rows.append([label, _fmt(ce), _fmt(w_m), _fmt(w_s)])
    _write_csv(os.path.join(outdir, "profit_vs_expert_rate.csv"),
               ["patience", "c_e", "omega_mre", "omega_sre"], ce_rows)


def cmd_repro_paper(args) -> int:
    horizon = args.horizon if args.horizon is not None else 2e5
    reps = args.reps if args.reps is not None else 8
    seed = args.seed if args.seed is not None else 0
    outdir = args.out or "repro_out"
    try:
        os.makedirs(outdir, exist_ok=True)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot create output directory {outdir!r}: {exc}") from None

    checks = _Checks()
    _analytic_checks(checks)
    _simulation_checks(checks, horizon, reps, seed)
    all_ok = checks.report()
    _write_figures(outdir)
    print(f"figure data written to {outdir}/")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED
