from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "fixed",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("fixed")

F = Fraction


@pytest.fixture
def dyadic():
    from morandim.systems import dyadic_full

    return dyadic_full()


@pytest.fixture
def overlap3():
    from morandim.systems import overlap_three_halves

    return overlap_three_halves()


@pytest.fixture
def osc():
    from morandim.systems import osc_gap_full

    return osc_gap_full()


@pytest.fixture
def golden():
    from morandim.systems import golden_mean_shift

    return golden_mean_shift()


@pytest.fixture
def ladder():
    from morandim.systems import lazy_ladder_shift

    return lazy_ladder_shift()
