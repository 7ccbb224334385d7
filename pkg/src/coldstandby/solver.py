"""Stationary analysis of the embedded chain: availability, busy fractions, profit.

The long-run quantities follow from the stationary distribution ``pi`` of the
embedded jump chain and the expected sojourn times ``mu``: the occupancy
fraction of state k is ``pi_k mu_k / sum_j pi_j mu_j``, availability is one
minus the down-state occupancy, and the profit rate charges repairer wages by
busy fraction plus a per-visit trip charge spread over the expected cycle
length ``tau``.

A cycle, for billing purposes, runs between consecutive entries into state 2
that immediately follow a clean hand-off by the expert (she leaves at most one
failed unit behind: transitions 5 -> 2, or 3 -> 1 followed by the sure jump
1 -> 2).  ``tau`` solves a linear system of first-passage recursions in the
unknowns (tau, s32, s42, s52).  Under the single-repair policy the expert can
also leave from state 6 with two failed units pending; such hand-offs do not
close a cycle, so the raw count of expert call-outs then exceeds the number of
billed cycles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ExpertPolicy, ModelSpec, build_transition_matrix, sojourn_means, validate

STATIONARY_TOL = 1e-12


class ReducibleChain(ValueError):
    """The embedded chain has no strictly positive stationary distribution."""


class SingularRecursion(ValueError):
    """The cycle-length recursion system is not uniquely solvable."""


@dataclass(frozen=True)
class CostParams:
    """Money parameters for the profit rate.

    ``net_revenue_rate`` is revenue minus operating cost per unit of up time
    (any sign); ``c_r`` and ``c_e`` are wages per unit of busy time for the
    regular and expert repairers; ``c_l`` is the expert's per-visit trip charge.
    """

    net_revenue_rate: float
    c_r: float
    c_e: float
    c_l: float

    def __post_init__(self):
        for name in ("c_r", "c_e", "c_l"):
            v = getattr(self, name)
            if v < 0 or not np.isfinite(v):
                raise ValueError(f"cost '{name}' must be finite and >= 0, got {v!r}")
        if not np.isfinite(self.net_revenue_rate):
            raise ValueError("net_revenue_rate must be finite")


@dataclass(frozen=True)
class SmpSolution:
    """Full analytic output for one model at one parameter point.

    Vectors are indexed by state (1-based state k at index k-1).
    """

    pi: np.ndarray          # stationary distribution of the jump chain
    theta: np.ndarray       # long-run occupancy fractions
    a_inf: float            # limiting availability, 1 - theta[5]
    theta_r: float          # regular-repairer busy fraction, theta[1] + theta[3]
    theta_e: float          # expert busy fraction, theta[2] + theta[4] + theta[5]
    tau: float              # expected cycle length
    omega: float            # limiting profit per unit time


def stationary_distribution(P: np.ndarray) -> np.ndarray:
    """Solve pi P = pi, sum(pi) = 1 by direct linear solve.

    Raises ReducibleChain when the system is singular or any component of the
    solution is not strictly positive (an unreachable or absorbing subchain).
    """
    n = P.shape[0]
    A = np.eye(n) - P.T
    A[-1, :] = 1.0          # replace one balance equation with normalization
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        pi = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise ReducibleChain(f"stationary system is singular: {exc}") from exc
    if not np.all(pi > 0):
        raise ReducibleChain(f"nonpositive stationary mass: {pi}")
    residual = np.max(np.abs(pi @ P - pi))
    if residual >= STATIONARY_TOL:
        raise ReducibleChain(f"stationary residual {residual:.3e} exceeds {STATIONARY_TOL}")
    return pi


def occupancy_fractions(pi: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """Long-run fraction of time in each state: pi_k mu_k normalized."""
    w = pi * mu
    return w / w.sum()


def limiting_availability(theta: np.ndarray) -> float:
    """Long-run fraction of time the system is up: everything but state 6."""
    return 1.0 - float(theta[5])


def _cycle_system(P: np.ndarray, mu: np.ndarray, expert: ExpertPolicy):
    """Coefficient matrix and rhs for the unknowns (tau, s32, s42, s52).

    s_k2 is the expected time from entering state k until the cycle closes.
    Passing through state 2 without a clean expert hand-off restarts the full
    tau, hence the -P42 coupling in the s42 row.
    """
    A = np.zeros((4, 4))
    b = np.zeros(4)
    # tau = mu2 + P21 (mu1 + tau) + P23 s32 + P24 s42
    A[0] = (1.0 - P[1, 0], -P[1, 2], -P[1, 3], 0.0)
    b[0] = mu[1] + P[1, 0] * mu[0]
    # s32 = mu3 + P31 mu1 + P35 s52     (3 -> 1 -> 2 closes the cycle)
    A[1] = (0.0, 1.0, 0.0, -P[2, 4])
    b[1] = mu[2] + P[2, 0] * mu[0]
    if expert is ExpertPolicy.MRE:
        # s42 = mu4 + P45 s52 + P46 (mu6 + s52) + P42 tau      (6 -> 5)
        A[2] = (-P[3, 1], 0.0, 1.0, -(P[3, 4] + P[3, 5]))
        b[2] = mu[3] + P[3, 5] * mu[5]
        # s52 = mu5 + P53 s32 + P56 (mu6 + s52)
        A[3] = (0.0, -P[4, 2], 0.0, 1.0 - P[4, 5])
        b[3] = mu[4] + P[4, 5] * mu[5]
    else:
        # s42 = mu4 + P45 s52 + P46 (mu6 + s42) + P42 tau      (6 -> 4)
        A[2] = (-P[3, 1], 0.0, 1.0 - P[3, 5], -P[3, 4])
        b[2] = mu[3] + P[3, 5] * mu[5]
        # s52 = mu5 + P56 (mu6 + s42)               (5 -> 2 closes the cycle)
        A[3] = (0.0, 0.0, -P[4, 5], 1.0)
        b[3] = mu[4] + P[4, 5] * mu[5]
    return A, b


def expected_cycle_length(spec: ModelSpec) -> float:
    """Expected time between consecutive cycle closures (one trip charge each)."""
    P = build_transition_matrix(spec)
    mu = sojourn_means(spec)
    A, b = _cycle_system(P, mu, spec.expert)
    try:
        x = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise SingularRecursion(f"cycle recursion system is singular: {exc}") from exc
    tau = float(x[0])
    if not np.isfinite(tau) or tau <= 0:
        raise SingularRecursion(f"cycle recursion gave tau = {tau!r}")
    return tau


def limiting_profit(a_inf: float, theta_r: float, theta_e: float, tau: float,
                    costs: CostParams) -> float:
    """Profit rate: revenue on up time minus wages and trip charges."""
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau!r}")
    return (a_inf * costs.net_revenue_rate
            - (theta_r * costs.c_r + theta_e * costs.c_e + costs.c_l / tau))


def availability(spec: ModelSpec) -> float:
    """Limiting availability alone (no cost parameters needed)."""
    P = build_transition_matrix(spec)
    mu = sojourn_means(spec)
    return limiting_availability(occupancy_fractions(stationary_distribution(P), mu))


def evaluate_model(spec: ModelSpec, costs: CostParams) -> SmpSolution:
    """Full deterministic evaluation of one model: pi, theta, availability, tau, profit."""
    validate(spec)
    P = build_transition_matrix(spec)
    mu = sojourn_means(spec)
    pi = stationary_distribution(P)
    theta = occupancy_fractions(pi, mu)
    a_inf = limiting_availability(theta)
    theta_r = float(theta[1] + theta[3])
    theta_e = float(theta[2] + theta[4] + theta[5])
    tau = expected_cycle_length(spec)
    omega = limiting_profit(a_inf, theta_r, theta_e, tau, costs)
    pi.setflags(write=False)
    theta.setflags(write=False)
    return SmpSolution(pi=pi, theta=theta, a_inf=a_inf, theta_r=theta_r,
                       theta_e=theta_e, tau=tau, omega=omega)
