"""Availability and profit analysis for a repairable system with cold-standby
spares, a regular repairer working under a patience time, and a visiting
expert repairer.
"""

from .model import (DOWN_STATE, MODEL_IDS, N_STATES, STATE_LABELS,
                    DeterministicPatience, ExpertPolicy, ModelSpec,
                    NonFiniteParameter, NonPositiveParameter, Patience,
                    RandomPatience, RateParams, build_transition_matrix,
                    make_spec, p45_dpt, sojourn_means, validate)
from .optimize import (CrossingResult, NoSignChange, SweepGrid, SweepRow,
                       expert_cost_threshold, find_equal_availability_T,
                       find_profit_crossings, maximize_profit_T, sweep,
                       t_star_one_spare)
from .simulate import (ConfigError, Estimate, InsufficientCycles, SimConfig,
                       SimEstimate, cycle_statistics, run_replication, simulate)
from .solver import (CostParams, ReducibleChain, SingularRecursion, SmpSolution,
                     availability, evaluate_model, expected_cycle_length,
                     limiting_availability, limiting_profit, occupancy_fractions,
                     stationary_distribution)

__version__ = "0.1.0"

__all__ = [
    "DOWN_STATE", "MODEL_IDS", "N_STATES", "STATE_LABELS",
    "DeterministicPatience", "ExpertPolicy", "ModelSpec", "Patience",
    "RandomPatience", "RateParams", "NonFiniteParameter", "NonPositiveParameter",
    "build_transition_matrix", "make_spec", "p45_dpt", "sojourn_means", "validate",
    "CostParams", "ReducibleChain", "SingularRecursion", "SmpSolution",
    "availability", "evaluate_model", "expected_cycle_length",
    "limiting_availability", "limiting_profit", "occupancy_fractions",
    "stationary_distribution",
    "ConfigError", "Estimate", "InsufficientCycles", "SimConfig", "SimEstimate",
    "cycle_statistics", "run_replication", "simulate",
    "CrossingResult", "NoSignChange", "SweepGrid", "SweepRow",
    "expert_cost_threshold", "find_equal_availability_T", "find_profit_crossings",
    "maximize_profit_T", "sweep", "t_star_one_spare",
]
