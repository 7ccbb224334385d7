"""Domain model for a one-unit repairable system with two cold-standby spares.

A single unit operates while up to two spares wait on cold standby.  Failed
units are repaired first by a regular repairer who is given a patience time
(random, exponential rate ``alpha``, or deterministic, length ``T``); when the
patience runs out, or the whole system goes down, an expert repairer takes
over (any partial repair is forfeited).  The expert either clears every failed
unit before leaving ("mre") or repairs exactly one per visit ("sre").

With exponential lifetimes and repair times the system is a semi-Markov
process on six states (1-based, as reported by every public interface):

    1 = (p,s,s)   operating, two standbys
    2 = (r,p,s)   one unit under regular repair
    3 = (e,p,s)   one unit under expert repair
    4 = (r,w,p)   regular repairing, one unit waiting
    5 = (e,w,p)   expert repairing, one unit waiting
    6 = (e,w,w)   all three units down  (the only down state)

Internally arrays are zero-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

N_STATES = 6
DOWN_STATE = 6  # 1-based
STATE_LABELS = ("(p,s,s)", "(r,p,s)", "(e,p,s)", "(r,w,p)", "(e,w,p)", "(e,w,w)")

MODEL_IDS = ("mre-rpt", "sre-rpt", "mre-dpt", "sre-dpt")


class NonPositiveParameter(ValueError):
    """A rate or duration that must be strictly positive is not."""

    def __init__(self, name: str, value: float):
        self.name = name
        self.value = value
        super().__init__(f"parameter '{name}' must be strictly positive, got {value!r}")


class NonFiniteParameter(ValueError):
    """A parameter is NaN or infinite."""

    def __init__(self, name: str, value: float):
        self.name = name
        self.value = value
        super().__init__(f"parameter '{name}' must be finite, got {value!r}")


@dataclass(frozen=True)
class RateParams:
    """Exponential rates: ``lam`` failure, ``beta`` regular repair, ``gamma`` expert repair."""

    lam: float
    beta: float
    gamma: float


@dataclass(frozen=True)
class RandomPatience:
    """Exponentially distributed patience time with rate ``alpha``."""

    alpha: float


@dataclass(frozen=True)
class DeterministicPatience:
    """Fixed patience time ``T``, measured from the start of each regular repair."""

    T: float


Patience = Union[RandomPatience, DeterministicPatience]


class ExpertPolicy(Enum):
    """How many failed units the expert repairs per visit: all of them or one."""

    MRE = "mre"
    SRE = "sre"


@dataclass(frozen=True)
class ModelSpec:
    """One of the four repair models: an expert policy plus a patience policy."""

    rates: RateParams
    patience: Patience
    expert: ExpertPolicy

    @property
    def model_id(self) -> str:
        pat = "rpt" if isinstance(self.patience, RandomPatience) else "dpt"
        return f"{self.expert.value}-{pat}"


def make_spec(model_id: str, rates: RateParams,
              alpha: float | None = None, T: float | None = None) -> ModelSpec:
    """Build (and validate) the ModelSpec for a model id such as ``"mre-dpt"``."""
    if model_id not in MODEL_IDS:
        raise ValueError(f"unknown model id {model_id!r}; expected one of {MODEL_IDS}")
    expert_part, pat_part = model_id.split("-")
    if pat_part == "rpt":
        if alpha is None:
            raise NonPositiveParameter("alpha", alpha)
        patience: Patience = RandomPatience(alpha)
    else:
        if T is None:
            raise NonPositiveParameter("T", T)
        patience = DeterministicPatience(T)
    return validate(ModelSpec(rates, patience, ExpertPolicy(expert_part)))


def _check_positive(name: str, value) -> None:
    if value is None or not isinstance(value, (int, float)):
        raise NonPositiveParameter(name, value)
    if math.isnan(value) or math.isinf(value):
        raise NonFiniteParameter(name, value)
    if value <= 0:
        raise NonPositiveParameter(name, value)


def validate(spec: ModelSpec) -> ModelSpec:
    """Check every rate/duration is strictly positive and finite; return the spec.

    Boundary values are rejected: ``alpha = 0`` or ``T = inf`` would make the
    expert states unreachable and the embedded chain reducible.
    """
    _check_positive("lambda", spec.rates.lam)
    _check_positive("beta", spec.rates.beta)
    _check_positive("gamma", spec.rates.gamma)
    if isinstance(spec.patience, RandomPatience):
        _check_positive("alpha", spec.patience.alpha)
    else:
        _check_positive("T", spec.patience.T)
    return spec


def p45_dpt(lam: float, beta: float, T: float) -> float:
    """Probability that the patience residual expires before failure or repair in state 4.

    Under the deterministic policy, state 4 is modelled with a residual
    deadline distributed as ``T - E`` where ``E ~ exp(lam)``, with no deadline
    at all on the event ``E >= T``.  Competing against the exponential pair
    ``min(X', Y') ~ exp(lam + beta)`` this gives

        lam * exp(-lam*T) * (1 - exp(-beta*T)) / beta

    which lies in ``(0, lam/(lam+beta))``.
    """
    _check_positive("lambda", lam)
    _check_positive("beta", beta)
    _check_positive("T", T)
    return lam * math.exp(-lam * T) * (1.0 - math.exp(-beta * T)) / beta


def build_transition_matrix(spec: ModelSpec) -> np.ndarray:
    """Embedded jump-chain transition matrix (6x6, row stochastic).

    Entries are computed from competing-exponential first principles
    (rate over total rate, plus the state-4 residual-deadline kernel for the
    deterministic policy) rather than tabulated per model.
    """
    validate(spec)
    lam, beta, gamma = spec.rates.lam, spec.rates.beta, spec.rates.gamma
    P = np.zeros((6, 6))

    # state 1: the only event is a failure
    P[0, 1] = 1.0

    # states 3 and 5: expert repair (gamma) races the operating unit (lam)
    P[2, 0] = gamma / (lam + gamma)
    P[2, 4] = lam / (lam + gamma)
    P[4, 5] = lam / (lam + gamma)
    if spec.expert is ExpertPolicy.MRE:
        P[4, 2] = gamma / (lam + gamma)   # expert stays for the waiting unit
        P[5, 4] = 1.0
    else:
        P[4, 1] = gamma / (lam + gamma)   # expert leaves, regular takes over
        P[5, 3] = 1.0

    # states 2 and 4: regular repair races failure and the patience clock
    if isinstance(spec.patience, RandomPatience):
        alpha = spec.patience.alpha
        total = lam + alpha + beta
        P[1, 0] = beta / total
        P[1, 2] = alpha / total
        P[1, 3] = lam / total
        P[3, 1] = beta / total
        P[3, 4] = alpha / total
        P[3, 5] = lam / total
    else:
        T = spec.patience.T
        surv = math.exp(-(lam + beta) * T)  # P{min(X, Y) > T}
        P[1, 0] = beta * (1.0 - surv) / (lam + beta)
        P[1, 2] = surv
        P[1, 3] = lam * (1.0 - surv) / (lam + beta)
        p45 = p45_dpt(lam, beta, T)
        P[3, 1] = (1.0 - p45) * beta / (lam + beta)
        P[3, 4] = p45
        P[3, 5] = (1.0 - p45) * lam / (lam + beta)

    return P


def sojourn_means(spec: ModelSpec) -> np.ndarray:
    """Expected sojourn time in each state (vector of length 6, 1-based state k at index k-1)."""
    validate(spec)
    lam, beta, gamma = spec.rates.lam, spec.rates.beta, spec.rates.gamma
    mu = np.empty(6)
    mu[0] = 1.0 / lam
    mu[2] = mu[4] = 1.0 / (lam + gamma)
    mu[5] = 1.0 / gamma
    if isinstance(spec.patience, RandomPatience):
        mu[1] = mu[3] = 1.0 / (lam + spec.patience.alpha + beta)
    else:
        T = spec.patience.T
        mu[1] = (1.0 - math.exp(-(lam + beta) * T)) / (lam + beta)
        # min of exp(lam+beta) against the state-4 residual deadline
        mu[3] = (1.0 - p45_dpt(lam, beta, T)) / (lam + beta)
    return mu
