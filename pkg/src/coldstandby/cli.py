"""Command-line front end: eval, sweep, simulate, optimize, repro-paper.

Flags may also be supplied through a JSON config file (``--config``); explicit
flags override file values.  All numeric CSV output uses full-precision
``repr`` text, UTF-8, comma separators and LF line endings, so identical
configurations (including the seed) produce byte-identical output.

Exit codes: 0 success, 1 reproduction-check failure (repro-paper only),
2 configuration error, 3 I/O error, 4 objective infeasible (no sign change).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .model import MODEL_IDS, STATE_LABELS, RateParams, make_spec
from .optimize import (NoSignChange, SweepGrid, expert_cost_threshold,
                       find_equal_availability_T, find_profit_crossings,
                       maximize_profit_T, sweep, t_star_one_spare)
from .simulate import InsufficientCycles, SimConfig, simulate
from .solver import CostParams, SmpSolution, availability, evaluate_model

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_INFEASIBLE = 4

SIM_QUANTITIES = ("a_inf", "theta_r", "theta_e", "tau", "visit_rate", "omega")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _config_error(message: str) -> CliError:
    return CliError(EXIT_CONFIG, message)


# ---------------------------------------------------------------- parsing

def _parse_grid(text: str) -> SweepGrid:
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise _config_error(f"grid must be start:stop:points[:log], got {text!r}")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise _config_error(f"bad grid {text!r}: {exc}") from None
    scale = "linear"
    if len(parts) == 4:
        if parts[3] not in ("log", "linear"):
            raise _config_error(f"grid scale must be 'log' or 'linear', got {parts[3]!r}")
        scale = parts[3]
    try:
        return SweepGrid(start, stop, points, scale)
    except ValueError as exc:
        raise _config_error(str(exc)) from None


def _parse_models(values) -> list[str]:
    if not values:
        return list(MODEL_IDS)
    picked = []
    for chunk in values:
        for item in chunk.split(","):
            item = item.strip()
            if item == "all":
                picked.extend(MODEL_IDS)
            elif item:
                picked.append(item)
    for item in picked:
        if item not in MODEL_IDS:
            raise _config_error(f"unknown model {item!r}; choose from {', '.join(MODEL_IDS)}")
    return [m for m in MODEL_IDS if m in picked]


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file of flag defaults (flags override)")
    p.add_argument("--model", action="append",
                   help=f"model id(s), comma-separable; default all of {', '.join(MODEL_IDS)}")
    p.add_argument("--lambda", dest="lam", type=float, help="failure rate")
    p.add_argument("--alpha", type=float, help="random-patience rate")
    p.add_argument("--beta", type=float, help="regular-repair rate")
    p.add_argument("--gamma", type=float, help="expert-repair rate")
    p.add_argument("--patience", dest="patience_T", type=float, metavar="T",
                   help="deterministic patience time")
    p.add_argument("--net-revenue", dest="net_revenue", type=float,
                   help="net revenue rate while up (revenue minus operating cost)")
    p.add_argument("--revenue", type=float, help="gross revenue rate (use with --op-cost)")
    p.add_argument("--op-cost", dest="op_cost", type=float, help="operating cost rate")
    p.add_argument("--cr", type=float, help="regular repairer cost rate (default 0)")
    p.add_argument("--ce", type=float, help="expert cost rate (default 0)")
    p.add_argument("--cl", type=float, help="expert trip charge per visit (default 0)")
    p.add_argument("--out", help="output path (CSV; directory for repro-paper)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coldstandby",
        description="Availability and profit analysis for a repairable system "
                    "with cold-standby spares and two repairers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the analytic model at one parameter point")
    _add_common_flags(p)

    p = sub.add_parser("sweep", help="tabulate availability and profit over a grid of T")
    _add_common_flags(p)
    p.add_argument("--grid", help="T grid as start:stop:points[:log]")

    p = sub.add_parser("simulate", help="discrete-event simulation with standard errors")
    _add_common_flags(p)
    p.add_argument("--spares", type=int, help="number of cold-standby spares (1 or 2, default 2)")
    p.add_argument("--horizon", type=float, help="simulated time per replication")
    p.add_argument("--cycles", type=int, help="completed cycles per replication")
    p.add_argument("--warmup", type=float, help="simulated time discarded (default 5%% of horizon)")
    p.add_argument("--reps", type=int, help="independent replications (default 8)")
    p.add_argument("--seed", type=int, help="random seed (default 0)")
    p.add_argument("--kernel-mode", dest="kernel_mode",
                   choices=("paper_faithful", "physical"),
                   help="state-4 patience semantics under deterministic patience")

    p = sub.add_parser("optimize", help="1-D searches over T or the expert cost rate")
    _add_common_flags(p)
    p.add_argument("--objective", required=True,
                   choices=("max-omega", "equal-availability", "profit-crossings",
                            "expert-threshold", "t-star"))
    p.add_argument("--grid", help="search bracket as start:stop:points[:log]")

    p = sub.add_parser("repro-paper",
                       help="run the full reference reproduction; print PASS/FAIL per check")
    _add_common_flags(p)
    p.add_argument("--horizon", type=float, help="simulation horizon per replication (default 2e5)")
    p.add_argument("--reps", type=int, help="replications per simulation check (default 8)")
    p.add_argument("--seed", type=int, help="random seed (default 0)")

    return parser


def _apply_config_file(args: argparse.Namespace) -> None:
    """Fill unset flags from a JSON key-value file; flags keep priority."""
    if not getattr(args, "config", None):
        return
    try:
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read config file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _config_error(f"config file is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise _config_error("config file must hold a JSON object")
    aliases = {"lambda": "lam", "patience": "patience_T", "net-revenue": "net_revenue",
               "op-cost": "op_cost", "kernel-mode": "kernel_mode"}
    for key, value in raw.items():
        dest = aliases.get(key, key.replace("-", "_"))
        if not hasattr(args, dest):
            raise _config_error(f"unknown config key {key!r}")
        if getattr(args, dest) is None:
            if dest == "model" and isinstance(value, str):
                value = [value]
            setattr(args, dest, value)


# ---------------------------------------------------------------- shared pieces

def _require(args, name: str, flag: str):
    value = getattr(args, name)
    if value is None:
        raise _config_error(f"missing required parameter '{flag}'")
    return value


def _rates_from(args) -> RateParams:
    return RateParams(_require(args, "lam", "lambda"),
                      _require(args, "beta", "beta"),
                      _require(args, "gamma", "gamma"))


def _costs_from(args) -> CostParams:
    if args.net_revenue is not None and args.revenue is not None:
        raise _config_error("give either 'net-revenue' or the 'revenue'/'op-cost' pair, not both")
    if args.net_revenue is not None:
        net = args.net_revenue
    elif args.revenue is not None:
        net = args.revenue - (args.op_cost or 0.0)
    else:
        raise _config_error("missing required parameter 'net-revenue' (or 'revenue')")
    try:
        return CostParams(net, args.cr or 0.0, args.ce or 0.0, args.cl or 0.0)
    except ValueError as exc:
        raise _config_error(str(exc)) from None


def _spec_for(args, model: str, T: float | None = None):
    if model.endswith("rpt") and args.alpha is None:
        raise _config_error(f"model {model} requires parameter 'alpha'")
    if model.endswith("dpt") and T is None:
        raise _config_error(f"model {model} requires parameter 'patience' (T)")
    return make_spec(model, _rates_from(args), alpha=args.alpha, T=T)


def _fmt(x: float) -> str:
    return repr(float(x))


def _write_csv(path: str | None, header: list[str], rows: list[list]) -> None:
    def emit(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)

    if path is None:
        emit(sys.stdout)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            emit(fh)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path!r}: {exc}") from None


def _expert_family(args) -> str:
    models = args.model or []
    joined = ",".join(models) if models else ""
    for fam in ("mre", "sre"):
        if joined.startswith(fam):
            return fam
    raise _config_error("this objective needs --model mre or --model sre "
                        "(a full model id also works)")


# ---------------------------------------------------------------- commands

def cmd_eval(args) -> int:
    models = _parse_models(args.model)
    costs = _costs_from(args)
    print("states:", "  ".join(f"{k + 1}={lbl}" for k, lbl in enumerate(STATE_LABELS)))
    rows = []
    for model in models:
        spec = _spec_for(args, model, args.patience_T)
        sol = evaluate_model(spec, costs)
        T_label = f"  (T = {args.patience_T})" if model.endswith("dpt") else ""
        print(f"model: {model}{T_label}")
        print(f"  pi      = [{', '.join(f'{v:.9f}' for v in sol.pi)}]")
        print(f"  theta   = [{', '.join(f'{v:.9f}' for v in sol.theta)}]")
        print(f"  A_inf   = {sol.a_inf:.9f}")
        print(f"  Theta_r = {sol.theta_r:.9f}")
        print(f"  Theta_e = {sol.theta_e:.9f}")
        print(f"  tau     = {sol.tau:.9f}")
        print(f"  omega   = {sol.omega:.9f}")
        rows.append([model, _fmt(args.patience_T) if model.endswith("dpt") else "",
                     _fmt(sol.a_inf), _fmt(sol.theta_r), _fmt(sol.theta_e),
                     _fmt(sol.tau), _fmt(sol.omega)])
    if args.out:
        _write_csv(args.out, ["model", "T", "a_inf", "theta_r", "theta_e", "tau", "omega"], rows)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not args.grid:
        raise _config_error("missing required parameter 'grid'")
    grid = args.grid if isinstance(args.grid, SweepGrid) else _parse_grid(args.grid)
    models = _parse_models(args.model)
    if any(m.endswith("rpt") for m in models) and args.alpha is None:
        raise _config_error("selected models require parameter 'alpha'")
    rows = sweep(models, _rates_from(args), args.alpha, _costs_from(args), grid)
    _write_csv(args.out, ["model", "T", "a_inf", "theta_r", "theta_e", "tau", "omega"],
               [[r.model, _fmt(r.T), _fmt(r.a_inf), _fmt(r.theta_r), _fmt(r.theta_e),
                 _fmt(r.tau), _fmt(r.omega)] for r in rows])
    if args.out:
        print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def _sim_config_from(args) -> SimConfig:
    # SimConfig raises ConfigError (a ValueError) on bad combinations; main()
    # maps it to the configuration exit code
    return SimConfig(
        spares=args.spares if args.spares is not None else 2,
        horizon=args.horizon,
        n_cycles=args.cycles,
        warmup=args.warmup,
        seed=args.seed if args.seed is not None else 0,
        replications=args.reps if args.reps is not None else 8,
        kernel_mode=args.kernel_mode or "paper_faithful",
    )


def cmd_simulate(args) -> int:
    models = _parse_models(args.model)
    costs = _costs_from(args)
    config = _sim_config_from(args)
    rows = []
    for model in models:
        spec = _spec_for(args, model, args.patience_T)
        est = simulate(spec, costs, config)
        analytic = evaluate_model(spec, costs) if config.spares == 2 else None
        print(f"model: {model}  spares={config.spares}  reps={config.replications}  "
              f"cycles={est.n_cycles_observed}")
        for name in SIM_QUANTITIES:
            e = getattr(est, name)
            line = f"  {name:<10} = {e.value:12.6f} +- {e.se:.2e}"
            ref = _analytic_value(analytic, name)
            if ref is not None:
                z = (e.value - ref) / e.se if e.se > 0 else float("inf")
                line += f"   analytic {ref:12.6f}   z = {z:+.2f}"
            rows.append([model, name, _fmt(e.value), _fmt(e.se),
                         _fmt(ref) if ref is not None else "",
                         _fmt((e.value - ref) / e.se) if ref is not None and e.se > 0 else ""])
            print(line)
    if args.out:
        _write_csv(args.out, ["model", "quantity", "estimate", "se", "analytic", "z"], rows)
    return EXIT_OK


def _analytic_value(sol: SmpSolution | None, name: str) -> float | None:
    if sol is None:
        return None
    if name == "visit_rate":
        return 1.0 / sol.tau
    return getattr(sol, name)


def cmd_optimize(args) -> int:
    objective = args.objective
    if objective == "t-star":
        t = t_star_one_spare(_require(args, "lam", "lambda"),
                             _require(args, "beta", "beta"),
                             _require(args, "alpha", "alpha"))
        print(f"t-star: T = {t:.9f}")
        return EXIT_OK

    grid = _parse_grid(args.grid) if args.grid else SweepGrid(0.2, 5.0, 512)
    rates = _rates_from(args)

    if objective == "equal-availability":
        fam = _expert_family(args)
        res = find_equal_availability_T(fam, rates, _require(args, "alpha", "alpha"), grid)
        for root in res.roots:
            spec = make_spec(f"{fam}-dpt", rates, T=root)
            print(f"equal-availability ({fam}): T = {root:.9f}  A_inf = {availability(spec):.9f}")
        return EXIT_OK

    costs = _costs_from(args)
    if objective == "profit-crossings":
        fam = _expert_family(args)
        res = find_profit_crossings(fam, rates, _require(args, "alpha", "alpha"), costs, grid)
        for root in res.roots:
            sol = evaluate_model(make_spec(f"{fam}-dpt", rates, T=root), costs)
            print(f"profit-crossing ({fam}): T = {root:.9f}  omega = {sol.omega:.9f}")
        return EXIT_OK
    if objective == "max-omega":
        fam = _expert_family(args)
        t_opt, w_opt = maximize_profit_T(fam, rates, costs, grid)
        print(f"max-omega ({fam}-dpt): T = {t_opt:.9f}  omega = {w_opt:.9f}")
        return EXIT_OK
    if objective == "expert-threshold":
        if (args.alpha is None) == (args.patience_T is None):
            raise _config_error("expert-threshold needs exactly one of 'alpha' or 'patience'")
        ce_grid = _parse_grid(args.grid) if args.grid else SweepGrid(0.0, 50.0, 512)
        ce_star = expert_cost_threshold(rates, args.alpha, args.patience_T, costs, ce_grid)
        print(f"expert-threshold: c_e = {ce_star:.9f}")
        return EXIT_OK
    raise _config_error(f"unknown objective {objective!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config_file(args)
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "sweep":
            return cmd_sweep(args)
        if args.command == "simulate":
            return cmd_simulate(args)
        if args.command == "optimize":
            return cmd_optimize(args)
        if args.command == "repro-paper":
            from .repro import cmd_repro_paper
            return cmd_repro_paper(args)
        raise _config_error(f"unknown command {args.command!r}")
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except NoSignChange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InsufficientCycles, ValueError) as exc:
        # covers parameter validation (NonPositiveParameter etc.), bad cost
        # or grid values, and simulation budgets too small to form cycles
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
