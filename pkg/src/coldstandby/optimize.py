"""One-dimensional policy searches over the patience time T and the expert rate.

All objectives evaluate the analytic engine (never the simulator): profit
maximization over T, equal-availability and equal-profit crossings between the
deterministic and random patience policies, the one-spare closed form for the
equalizing T, and the expert cost-rate threshold between the two expert
policies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .model import MODEL_IDS, RateParams, make_spec
from .solver import CostParams, availability, evaluate_model

ROOT_XTOL = 1e-12          # brentq bracket width
ROOT_FTOL = 1e-9           # |difference| certified at each returned root
SCAN_POINTS = 512          # coarse scan for sign changes
MAXIMIZE_POINTS = 256      # coarse scan before golden-section refinement
GOLDEN_XTOL = 1e-6

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class NoSignChange(RuntimeError):
    """The target difference does not change sign on the bracket."""


@dataclass(frozen=True)
class SweepGrid:
    """Grid of T (or cost-rate) values: [start, stop] with `points` nodes.

    Patience-time grids need start > 0; a zero start is allowed only on the
    linear scale (used for cost-rate sweeps).
    """

    start: float
    stop: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        low = 0.0 if self.scale == "linear" else None
        if not (self.start < self.stop) or (low is not None and self.start < low) \
                or (self.scale == "log" and self.start <= 0):
            raise ValueError(f"invalid bracket [{self.start}, {self.stop}] on {self.scale} scale")
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"scale must be 'linear' or 'log', got {self.scale!r}")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class CrossingResult:
    roots: tuple[float, ...]
    bracket_tolerance: float = ROOT_XTOL


def t_star_one_spare(lam: float, beta: float, alpha: float) -> float:
    """T making the single-spare system's availability policy-independent:
    log(1 + (lam+beta)/alpha) / (lam+beta)."""
    if min(lam, beta, alpha) <= 0:
        raise ValueError("all rates must be positive")
    return math.log(1.0 + (lam + beta) / alpha) / (lam + beta)


def _find_roots(f, bracket: SweepGrid) -> CrossingResult:
    """Scan for sign changes, then refine each cell with a bracketing solver."""
    n = max(SCAN_POINTS, bracket.points)
    xs = SweepGrid(bracket.start, bracket.stop, n, bracket.scale).values()
    ys = np.array([f(x) for x in xs])
    roots = [float(xs[i]) for i in np.nonzero(ys == 0.0)[0]]
    for i in np.nonzero(np.sign(ys[:-1]) * np.sign(ys[1:]) < 0)[0]:
        r = brentq(f, xs[i], xs[i + 1], xtol=ROOT_XTOL)
        if abs(f(r)) >= ROOT_FTOL:
            raise ValueError(f"root refinement stalled at x={r} with |f|={abs(f(r)):.2e}")
        roots.append(float(r))
    if not roots:
        raise NoSignChange(
            f"no sign change on [{bracket.start}, {bracket.stop}] "
            f"(f spans [{ys.min():.4g}, {ys.max():.4g}])")
    return CrossingResult(roots=tuple(sorted(roots)))


def find_equal_availability_T(expert: str, rates: RateParams, alpha: float,
                              bracket: SweepGrid) -> CrossingResult:
    """T values where the deterministic policy matches the random policy's availability."""
    a_rpt = availability(make_spec(f"{expert}-rpt", rates, alpha=alpha))

    def diff(T: float) -> float:
        return availability(make_spec(f"{expert}-dpt", rates, T=T)) - a_rpt

    return _find_roots(diff, bracket)


def find_profit_crossings(expert: str, rates: RateParams, alpha: float,
                          costs: CostParams, bracket: SweepGrid) -> CrossingResult:
    """T values where the deterministic policy matches the random policy's profit rate."""
    w_rpt = evaluate_model(make_spec(f"{expert}-rpt", rates, alpha=alpha), costs).omega

    def diff(T: float) -> float:
        return evaluate_model(make_spec(f"{expert}-dpt", rates, T=T), costs).omega - w_rpt

    return _find_roots(diff, bracket)


def _golden_max(f, a: float, b: float, xtol: float = GOLDEN_XTOL) -> float:
    """Golden-section search for the maximizer of a unimodal f on [a, b]."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def maximize_profit_T(expert: str, rates: RateParams, costs: CostParams,
                      bracket: SweepGrid) -> tuple[float, float]:
    """Best deterministic patience time on the bracket and its profit rate.

    Coarse grid scan picks the basin; golden-section refines inside it.  A
    profit monotone over the whole bracket returns the better endpoint.
    """
    def omega(T: float) -> float:
        return evaluate_model(make_spec(f"{expert}-dpt", rates, T=T), costs).omega

    xs = SweepGrid(bracket.start, bracket.stop, max(MAXIMIZE_POINTS, bracket.points),
                   bracket.scale).values()
    ys = np.array([omega(x) for x in xs])
    k = int(np.argmax(ys))
    if k == 0 or k == len(xs) - 1:
        return float(xs[k]), float(ys[k])
    t_opt = _golden_max(omega, xs[k - 1], xs[k + 1])
    return float(t_opt), float(omega(t_opt))


def expert_cost_threshold(rates: RateParams, alpha: float | None, T: float | None,
                          costs: CostParams, bracket: SweepGrid) -> float:
    """Expert cost rate at which the two expert policies earn the same profit.

    Below the threshold repairing every failed unit per visit pays better;
    above it single repairs win.  The patience policy is fixed by passing
    either ``alpha`` (random) or ``T`` (deterministic).
    """
    pat = "rpt" if alpha is not None else "dpt"

    def diff(c_e: float) -> float:
        c = CostParams(costs.net_revenue_rate, costs.c_r, c_e, costs.c_l)
        w_mre = evaluate_model(make_spec(f"mre-{pat}", rates, alpha=alpha, T=T), c).omega
        w_sre = evaluate_model(make_spec(f"sre-{pat}", rates, alpha=alpha, T=T), c).omega
        return w_mre - w_sre

    result = _find_roots(diff, bracket)
    if len(result.roots) != 1:
        raise ValueError(f"expected a single threshold, found crossings at {result.roots}")
    return result.roots[0]


@dataclass(frozen=True)
class SweepRow:
    model: str
    T: float
    a_inf: float
    theta_r: float
    theta_e: float
    tau: float
    omega: float


def sweep(models: list[str], rates: RateParams, alpha: float | None,
          costs: CostParams, grid: SweepGrid) -> list[SweepRow]:
    """Evaluate the selected models on every grid point of T.

    Random-patience models do not depend on T; their rows repeat the same
    solution across the grid.  Rows are ordered by the canonical model order,
    then by T.
    """
    rows: list[SweepRow] = []
    ts = grid.values()
    for model in MODEL_IDS:
        if model not in models:
            continue
        if model.endswith("rpt"):
            sol = evaluate_model(make_spec(model, rates, alpha=alpha), costs)
            rows.extend(SweepRow(model, float(t), sol.a_inf, sol.theta_r,
                                 sol.theta_e, sol.tau, sol.omega) for t in ts)
        else:
            for t in ts:
                sol = evaluate_model(make_spec(model, rates, T=float(t)), costs)
                rows.append(SweepRow(model, float(t), sol.a_inf, sol.theta_r,
                                     sol.theta_e, sol.tau, sol.omega))
    return rows
