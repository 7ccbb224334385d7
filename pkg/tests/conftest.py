import pytest
from hypothesis import HealthCheck, settings

from coldstandby import CostParams, RateParams

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# Reference parameter set used throughout the comparison study.
REF_RATES = RateParams(lam=0.5, beta=0.35, gamma=0.75)
REF_ALPHA = 0.3
REF_COSTS = CostParams(net_revenue_rate=20.0, c_r=1.0, c_e=5.0, c_l=3.0)


@pytest.fixture
def ref_rates():
    return REF_RATES


@pytest.fixture
def ref_costs():
    return REF_COSTS
