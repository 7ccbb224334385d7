import math

import pytest

from coldstandby import (ConfigError, InsufficientCycles, RateParams,
                         SimConfig, build_transition_matrix, evaluate_model,
                         expected_cycle_length, make_spec, run_replication,
                         simulate, sojourn_means)
from conftest import REF_ALPHA, REF_COSTS, REF_RATES
from oracle_forms import tau_sre_closed_form

BUDGET = dict(horizon=1e5, replications=6)


def z_of(estimate, target):
    return abs(estimate.value - target) / estimate.se


# ----------------------------------------------------------------- config

def test_config_requires_exactly_one_stopping_rule():
    with pytest.raises(ConfigError):
        SimConfig(horizon=None, n_cycles=None)
    with pytest.raises(ConfigError):
        SimConfig(horizon=1e4, n_cycles=100)


@pytest.mark.parametrize("kwargs", [
    dict(horizon=1e4, spares=3),
    dict(horizon=1e4, spares=0),
    dict(horizon=-5.0),
    dict(n_cycles=0),
    dict(horizon=1e4, warmup=-1.0),
    dict(horizon=1e4, replications=0),
    dict(horizon=1e4, kernel_mode="exact"),
])
def test_config_rejects_bad_values(kwargs):
    with pytest.raises(ConfigError):
        SimConfig(**kwargs)


def test_default_warmup_is_five_percent_of_horizon():
    assert SimConfig(horizon=2e5).effective_warmup == 1e4
    assert SimConfig(n_cycles=500).effective_warmup == 0.0
    assert SimConfig(horizon=2e5, warmup=123.0).effective_warmup == 123.0


# ----------------------------------------------------------------- determinism

def test_same_seed_bit_identical():
    spec = make_spec("sre-dpt", REF_RATES, T=1.5)
    config = SimConfig(horizon=2e4, seed=42, replications=3)
    a = simulate(spec, REF_COSTS, config)
    b = simulate(spec, REF_COSTS, config)
    assert a == b  # dataclass equality covers every field bit for bit
    c = simulate(spec, REF_COSTS, SimConfig(horizon=2e4, seed=43, replications=3))
    assert a.a_inf != c.a_inf


def test_replication_streams_differ():
    spec = make_spec("mre-rpt", REF_RATES, alpha=REF_ALPHA)
    config = SimConfig(horizon=1e4, seed=7, replications=2)
    r0 = run_replication(spec, config, rep=0)
    r1 = run_replication(spec, config, rep=1)
    assert r0["up_time"] != r1["up_time"]


# ----------------------------------------------------------------- accounting

@pytest.mark.parametrize("mid,spares", [("mre-rpt", 2), ("sre-dpt", 2), ("mre-dpt", 1)])
def test_accounting_identities(mid, spares):
    spec = make_spec(mid, REF_RATES, alpha=REF_ALPHA, T=1.5)
    config = SimConfig(spares=spares, horizon=5e4, seed=11, replications=1)
    r = run_replication(spec, config)
    total = r["total"]
    assert r["up_time"] + r["down_time"] == pytest.approx(total, rel=1e-9)
    assert r["reg_time"] + r["exp_time"] + r["idle_time"] == pytest.approx(total, rel=1e-9)
    assert total == pytest.approx(5e4 - config.effective_warmup, rel=1e-12)


def test_insufficient_cycles_raises():
    spec = make_spec("mre-rpt", REF_RATES, alpha=REF_ALPHA)
    with pytest.raises(InsufficientCycles):
        simulate(spec, REF_COSTS, SimConfig(horizon=50.0, seed=1, replications=2))


def test_cycle_count_stopping_rule():
    spec = make_spec("mre-rpt", REF_RATES, alpha=REF_ALPHA)
    est = simulate(spec, REF_COSTS, SimConfig(n_cycles=40, seed=5, replications=3))
    assert est.n_cycles_observed == 120
    assert est.total_time > 0


# ----------------------------------------------------------------- oracle equivalence

@pytest.mark.parametrize("mid,T", [("mre-rpt", None), ("sre-dpt", 1.5)])
def test_estimates_bracket_analytic_values(mid, T):
    spec = make_spec(mid, REF_RATES, alpha=REF_ALPHA, T=T)
    sol = evaluate_model(spec, REF_COSTS)
    est = simulate(spec, REF_COSTS, SimConfig(seed=101, **BUDGET))
    assert z_of(est.a_inf, sol.a_inf) < 3
    assert z_of(est.theta_r, sol.theta_r) < 3
    assert z_of(est.theta_e, sol.theta_e) < 3
    assert z_of(est.tau, sol.tau) < 3
    assert z_of(est.omega, sol.omega) < 3


def test_visit_rate_is_reciprocal_cycle_length():
    spec = make_spec("sre-rpt", REF_RATES, alpha=REF_ALPHA)
    est = simulate(spec, REF_COSTS, SimConfig(seed=17, **BUDGET))
    product = est.visit_rate.value * est.tau.value
    se = math.hypot(est.tau.value * est.visit_rate.se,
                    est.visit_rate.value * est.tau.se)
    assert abs(product - 1.0) <= 3 * se + 1e-12


def test_cycle_length_matches_recursion_sre():
    spec = make_spec("sre-rpt", REF_RATES, alpha=REF_ALPHA)
    oracle = tau_sre_closed_form(build_transition_matrix(spec), sojourn_means(spec))
    est = simulate(spec, REF_COSTS, SimConfig(seed=23, **BUDGET))
    assert z_of(est.tau, oracle) < 3
    assert z_of(est.tau, expected_cycle_length(spec)) < 3


def test_cycle_length_matches_recursion_mre():
    spec = make_spec("mre-rpt", REF_RATES, alpha=REF_ALPHA)
    est = simulate(spec, REF_COSTS, SimConfig(seed=29, **BUDGET))
    assert z_of(est.tau, expected_cycle_length(spec)) < 3


def test_fast_expert_cannot_reduce_availability():
    fast = make_spec("mre-rpt", RateParams(0.5, 0.35, 1e3), alpha=REF_ALPHA)
    est = simulate(fast, REF_COSTS, SimConfig(seed=31, horizon=5e4, replications=4))
    baseline = evaluate_model(make_spec("mre-rpt", REF_RATES, alpha=REF_ALPHA),
                              REF_COSTS).a_inf
    assert est.a_inf.value >= baseline


def test_single_spare_availability_below_two_spare():
    spec = make_spec("sre-rpt", REF_RATES, alpha=REF_ALPHA)
    one = simulate(spec, REF_COSTS, SimConfig(spares=1, horizon=3e5, seed=3, replications=8))
    two = simulate(spec, REF_COSTS, SimConfig(spares=2, horizon=3e5, seed=3, replications=8))
    assert one.a_inf.value < 0.80 < two.a_inf.value
    # the single-spare deficit is far outside noise
    gap = two.a_inf.value - one.a_inf.value
    assert gap > 3 * math.hypot(one.a_inf.se, two.a_inf.se)


def test_equal_availability_point_brackets_reference():
    spec = make_spec("sre-dpt", REF_RATES, T=1.66)
    est = simulate(spec, REF_COSTS, SimConfig(seed=37, **BUDGET))
    assert abs(est.a_inf.value - 0.80) <= 0.005 + 3 * est.a_inf.se


# ----------------------------------------------------------------- kernel modes

def test_kernel_modes_agree_for_random_patience():
    # memorylessness: the deadline semantics cannot matter under rpt
    spec = make_spec("mre-rpt", REF_RATES, alpha=REF_ALPHA)
    a = simulate(spec, REF_COSTS, SimConfig(horizon=2e4, seed=2, kernel_mode="paper_faithful"))
    b = simulate(spec, REF_COSTS, SimConfig(horizon=2e4, seed=2, kernel_mode="physical"))
    assert a == b


def test_kernel_modes_differ_measurably_for_fixed_patience():
    spec = make_spec("mre-dpt", REF_RATES, T=1.5)
    cfg = dict(horizon=2e5, replications=8)
    faithful = simulate(spec, REF_COSTS, SimConfig(seed=41, kernel_mode="paper_faithful", **cfg))
    physical = simulate(spec, REF_COSTS, SimConfig(seed=41, kernel_mode="physical", **cfg))
    gap = abs(faithful.a_inf.value - physical.a_inf.value)
    assert gap > 3 * math.hypot(faithful.a_inf.se, physical.a_inf.se)
    # only the faithful mode reproduces the analytic chain
    sol = evaluate_model(spec, REF_COSTS)
    assert z_of(faithful.a_inf, sol.a_inf) < 3
    assert z_of(physical.a_inf, sol.a_inf) > 3
