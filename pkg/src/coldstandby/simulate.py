"""Discrete-event Monte Carlo oracle for the repairable system.

Simulates the physical system for any number of spares in {1, 2}: one unit
operates, failed units queue at a single repair facility, the regular repairer
works under a patience limit, and the expert takes over on patience expiry or
system failure (partial repair forfeited).  Estimates availability, busy
fractions, cycle length, visit rate and profit rate with standard errors
computed across independent replications.

Two kernel modes control the state-4 patience semantics under the
deterministic policy with two spares:

* ``paper_faithful`` -- every entry into the two-failed/regular-repairing
  state draws the residual deadline from the analytic kernel (``T - E`` with
  ``E ~ exp(lam)``, no deadline when ``E >= T``), so the trajectory is exactly
  the semi-Markov chain the analytic engine solves.
* ``physical`` -- the deadline is the wall-clock instant ``T`` after the
  regular repairer began the current repair, and a hand-off from the expert
  starts a fresh deadline.

The two modes coincide for the random (exponential) patience policy and for a
single spare.  Cycles close at entries into the single-failure repair state
that immediately follow a clean expert hand-off (at most one failed unit left
behind); one trip charge is billed per cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numba import njit

from .model import DeterministicPatience, ExpertPolicy, ModelSpec, validate
from .solver import CostParams

KERNEL_MODES = ("paper_faithful", "physical")
MIN_CYCLES = 30


class ConfigError(ValueError):
    """Invalid simulation configuration."""


class InsufficientCycles(RuntimeError):
    """Too few completed cycles to form cycle statistics."""


@dataclass(frozen=True)
class SimConfig:
    """Simulation run configuration.

    Exactly one of ``horizon`` (simulated time per replication) and
    ``n_cycles`` (completed cycles per replication) must be set.  ``warmup``
    simulated time is discarded before accumulation; it defaults to 5% of the
    horizon (0 under the cycle-count rule).  Replication r draws its random
    stream from ``(seed, r)``, so results are reproducible bit for bit.
    """

    spares: int = 2
    horizon: float | None = None
    n_cycles: int | None = None
    warmup: float | None = None
    seed: int = 0
    replications: int = 8
    kernel_mode: str = "paper_faithful"

    def __post_init__(self):
        if self.spares not in (1, 2):
            raise ConfigError(f"spares must be 1 or 2, got {self.spares!r}")
        if (self.horizon is None) == (self.n_cycles is None):
            raise ConfigError("exactly one of horizon and n_cycles must be set")
        if self.horizon is not None and self.horizon <= 0:
            raise ConfigError(f"horizon must be positive, got {self.horizon!r}")
        if self.n_cycles is not None and self.n_cycles < 1:
            raise ConfigError(f"n_cycles must be >= 1, got {self.n_cycles!r}")
        if self.warmup is not None and self.warmup < 0:
            raise ConfigError(f"warmup must be >= 0, got {self.warmup!r}")
        if self.replications < 1:
            raise ConfigError(f"replications must be >= 1, got {self.replications!r}")
        if self.kernel_mode not in KERNEL_MODES:
            raise ConfigError(f"kernel_mode must be one of {KERNEL_MODES}, got {self.kernel_mode!r}")

    @property
    def effective_warmup(self) -> float:
        if self.warmup is not None:
            return self.warmup
        return 0.05 * self.horizon if self.horizon is not None else 0.0


class Estimate(NamedTuple):
    value: float
    se: float


@dataclass(frozen=True)
class SimEstimate:
    """Point estimates with standard errors (across replications)."""

    a_inf: Estimate
    theta_r: Estimate
    theta_e: Estimate
    tau: Estimate
    visit_rate: Estimate
    omega: Estimate
    n_cycles_observed: int
    total_time: float


@njit(cache=True)
def _replication(seed, n_units, mre, dpt, alpha, T, lam, beta, gamma,
                 horizon, warmup, target_cycles, paper_kernel):
    """One event-driven trajectory; returns post-warmup accumulators.

    Event priority on (measure-zero) ties: failure > patience expiry > repair
    completion.
    """
    np.random.seed(seed)
    inf = np.inf
    t = 0.0
    n_fail = 0
    repairer = 0  # 0 idle, 1 regular, 2 expert
    t_fail = np.random.exponential(1.0 / lam)
    t_repair = inf
    t_patience = inf
    handoff = False

    up_time = 0.0
    down_time = 0.0
    reg_time = 0.0
    exp_time = 0.0
    idle_time = 0.0
    total = 0.0
    arrivals = 0      # expert call-outs
    completions = 0   # billed cycle closures
    last_close = -1.0
    span_sum = 0.0
    n_spans = 0

    while True:
        if target_cycles > 0:
            if n_spans >= target_cycles:
                break
        elif t >= horizon:
            break

        t_next = t_fail
        ev = 0
        if t_patience < t_next:
            t_next = t_patience
            ev = 1
        if t_repair < t_next:
            t_next = t_repair
            ev = 2
        if target_cycles <= 0 and t_next > horizon:
            t_next = horizon
            ev = -1

        if t_next > warmup:
            lo = t if t > warmup else warmup
            dt = t_next - lo
            total += dt
            if n_fail < n_units:
                up_time += dt
            else:
                down_time += dt
            if repairer == 1:
                reg_time += dt
            elif repairer == 2:
                exp_time += dt
            else:
                idle_time += dt
        t = t_next
        if ev == -1:
            break

        entered_single_repair = False

        if ev == 0:
            # operating unit fails
            n_fail += 1
            if repairer == 0:
                repairer = 1
                t_repair = t + np.random.exponential(1.0 / beta)
                if dpt:
                    t_patience = t + T
                else:
                    t_patience = t + np.random.exponential(1.0 / alpha)
                entered_single_repair = True  # n_fail is 1 here
            elif repairer == 1 and n_fail == n_units:
                # system down while the regular is busy: summon the expert
                if t > warmup:
                    arrivals += 1
                repairer = 2
                t_repair = t + np.random.exponential(1.0 / gamma)
                t_patience = inf
            elif repairer == 1 and dpt and paper_kernel and n_units == 3 and n_fail == 2:
                # analytic state-4 kernel replaces the carried deadline
                x = np.random.exponential(1.0 / lam)
                t_patience = t + (T - x) if x < T else inf
            if n_fail < n_units:
                t_fail = t + np.random.exponential(1.0 / lam)
            else:
                t_fail = inf
        elif ev == 1:
            # patience expired: expert takes over, partial repair forfeited
            if t > warmup:
                arrivals += 1
            repairer = 2
            t_repair = t + np.random.exponential(1.0 / gamma)
            t_patience = inf
        else:
            # repair completion
            was_down = n_fail == n_units
            n_fail -= 1
            if was_down:
                # the repaired unit goes straight on operation
                t_fail = t + np.random.exponential(1.0 / lam)
            if repairer == 1:
                if n_fail >= 1:
                    # regular starts on the next waiting unit
                    t_repair = t + np.random.exponential(1.0 / beta)
                    if dpt:
                        t_patience = t + T
                    else:
                        t_patience = t + np.random.exponential(1.0 / alpha)
                    if n_fail == 1:
                        entered_single_repair = True
                else:
                    repairer = 0
                    t_repair = inf
                    t_patience = inf
            else:
                if mre and n_fail >= 1:
                    # expert stays until no failed units remain
                    t_repair = t + np.random.exponential(1.0 / gamma)
                else:
                    # expert leaves
                    if n_fail <= 1:
                        handoff = True
                    if n_fail >= 1:
                        repairer = 1
                        t_repair = t + np.random.exponential(1.0 / beta)
                        if dpt:
                            if paper_kernel and n_units == 3 and n_fail == 2:
                                x = np.random.exponential(1.0 / lam)
                                t_patience = t + (T - x) if x < T else inf
                            else:
                                t_patience = t + T
                        else:
                            t_patience = t + np.random.exponential(1.0 / alpha)
                        if n_fail == 1:
                            entered_single_repair = True
                    else:
                        repairer = 0
                        t_repair = inf
                        t_patience = inf

        if entered_single_repair and handoff:
            # cycle closes on entering the single-failure repair state
            handoff = False
            if t > warmup:
                completions += 1
                if last_close >= 0.0:
                    span_sum += t - last_close
                    n_spans += 1
                last_close = t

    return (up_time, down_time, reg_time, exp_time, idle_time, total,
            arrivals, completions, span_sum, n_spans)


def _rep_seed(seed: int, rep: int) -> int:
    return int(np.random.SeedSequence(entropy=seed, spawn_key=(rep,)).generate_state(1)[0])


def run_replication(spec: ModelSpec, config: SimConfig, rep: int = 0) -> dict:
    """Run one replication and return its raw accumulators (mainly for tests)."""
    validate(spec)
    dpt = isinstance(spec.patience, DeterministicPatience)
    out = _replication(
        _rep_seed(config.seed, rep),
        config.spares + 1,
        spec.expert is ExpertPolicy.MRE,
        dpt,
        spec.patience.alpha if not dpt else 0.0,
        spec.patience.T if dpt else 0.0,
        spec.rates.lam, spec.rates.beta, spec.rates.gamma,
        float(config.horizon) if config.horizon is not None else np.inf,
        config.effective_warmup,
        int(config.n_cycles) if config.n_cycles is not None else 0,
        config.kernel_mode == "paper_faithful",
    )
    keys = ("up_time", "down_time", "reg_time", "exp_time", "idle_time", "total",
            "arrivals", "completions", "span_sum", "n_spans")
    return dict(zip(keys, out))


def _mean_se(values: np.ndarray) -> Estimate:
    m = float(np.mean(values))
    if len(values) < 2:
        return Estimate(m, 0.0)
    return Estimate(m, float(np.std(values, ddof=1) / np.sqrt(len(values))))


def cycle_statistics(span_sums: np.ndarray, span_counts: np.ndarray,
                     completions: np.ndarray, totals: np.ndarray) -> tuple[Estimate, Estimate]:
    """Mean cycle length and cycle-closure (visit) rate from per-replication tallies.

    Their product converges to 1: each closure bills exactly one expert trip.
    """
    if int(span_counts.sum()) < MIN_CYCLES or span_counts.min() < 1:
        raise InsufficientCycles(
            f"observed {int(span_counts.sum())} cycles over {len(span_counts)} replications; "
            f"need at least {MIN_CYCLES} total and 1 per replication")
    tau = _mean_se(span_sums / span_counts)
    visit_rate = _mean_se(completions / totals)
    return tau, visit_rate


def simulate(spec: ModelSpec, costs: CostParams, config: SimConfig) -> SimEstimate:
    """Estimate the long-run quantities by discrete-event simulation.

    Identical (spec, costs, config) gives a bit-identical SimEstimate.
    """
    validate(spec)
    rows = np.array([list(run_replication(spec, config, r).values())
                     for r in range(config.replications)])
    (up, down, reg, exp_, idle, total,
     arrivals, completions, span_sum, n_spans) = rows.T
    tau, visit_rate = cycle_statistics(span_sum, n_spans, completions, total)
    omega_per_rep = (costs.net_revenue_rate * up - costs.c_r * reg
                     - costs.c_e * exp_ - costs.c_l * completions) / total
    return SimEstimate(
        a_inf=_mean_se(up / total),
        theta_r=_mean_se(reg / total),
        theta_e=_mean_se(exp_ / total),
        tau=tau,
        visit_rate=visit_rate,
        omega=_mean_se(omega_per_rep),
        n_cycles_observed=int(n_spans.sum()),
        total_time=float(total.sum()),
    )
