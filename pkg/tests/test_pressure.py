import math
from fractions import Fraction as F

import mpmath
import pytest

from morandim.pressure import (
    NonConvergenceError,
    dimension_report,
    pressure_at,
    pressure_spectral,
    pressure_zero,
)
from morandim.subshift import full_shift
from morandim.systems import (
    dyadic_full,
    dyadic_pair,
    golden_mean_shift,
    lazy_ladder_shift,
    osc_gap_full,
    unit_interval,
)
from morandim.moran import MoranConstruction

GOLDEN = (1 + math.sqrt(5)) / 2


def oracle_root(ratios, tol=1e-13):
    """Independent bisection for sum r_i^t = 1 in plain floats."""
    def f(t):
        return sum(r**t for r in ratios) - 1.0

    lo, hi = 0.0, 1.0
    while f(hi) > 0:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return (lo + hi) / 2


def test_pressure_at_dyadic(dyadic):
    assert abs(float(pressure_at(dyadic, 0, 6)) - math.log(2)) < 1e-15
    assert abs(float(pressure_at(dyadic, 1, 6))) < 1e-25


def test_pressure_at_golden():
    mc = MoranConstruction(dyadic_pair(), golden_mean_shift(), unit_interval())
    # 8 words of length 4, each of diameter 1/16
    expect = math.log(8.0 / 16.0) / 4
    assert abs(float(pressure_at(mc, 1, 4)) - expect) < 1e-15


def test_pressure_spectral_full_shift():
    for t in (0.0, 0.5, 1.0, 2.0):
        got = float(pressure_spectral(full_shift(2), [F(1, 2), F(1, 3)], t))
        expect = math.log(0.5**t + (1 / 3) ** t)
        assert abs(got - expect) < 1e-13


def test_pressure_spectral_golden_closed_form():
    for t in (0.0, 0.69, 1.0):
        got = float(pressure_spectral(golden_mean_shift(), [F(1, 2), F(1, 2)], t))
        expect = math.log(0.5**t * GOLDEN)
        assert abs(got - expect) < 1e-13


def test_pressure_spectral_reducible_ladder():
    got = float(pressure_spectral(lazy_ladder_shift(), [F(1, 2), F(1, 2)], 0.0))
    assert abs(got) < 1e-15  # polynomial word growth: zero exponential rate


def test_spectral_matches_finite_levels():
    mc = MoranConstruction(dyadic_pair(), golden_mean_shift(), unit_interval())
    t = 0.7
    limit = float(pressure_spectral(golden_mean_shift(), [F(1, 2), F(1, 2)], t))
    diffs = [abs(float(pressure_at(mc, t, n)) - limit) for n in (4, 8, 16)]
    fitted = max(n * d for n, d in zip((4, 8, 16), diffs))
    assert fitted < 1.0
    for n, d in zip((4, 8, 16), diffs):
        assert d <= fitted / n + 1e-15


def test_pressure_zero_examples(dyadic):
    assert abs(pressure_zero(mc=dyadic, tol=1e-12).t_star - 1.0) < 1e-10
    got = pressure_zero(shift=full_shift(2), ratios=[F(1, 2), F(1, 3)], tol=1e-12).t_star
    assert abs(got - oracle_root([0.5, 1 / 3])) < 1e-10
    got = pressure_zero(shift=full_shift(3), ratios=[F(1, 2), F(1, 5), F(1, 7)], tol=1e-12).t_star
    assert abs(got - oracle_root([0.5, 0.2, 1 / 7])) < 1e-10


def test_pressure_zero_at_zero_growth():
    curve = pressure_zero(shift=lazy_ladder_shift(), ratios=[F(1, 2), F(1, 2)], tol=1e-10)
    assert curve.t_star == 0.0
    assert curve.note is not None


def test_pressure_zero_bracket_and_samples(dyadic):
    curve = pressure_zero(mc=dyadic, tol=1e-10)
    lo, hi = curve.bracket
    assert hi - lo < 1e-9
    assert lo <= curve.t_star <= hi
    ts = [t for t, _ in curve.samples]
    ps = [p for _, p in curve.samples]
    assert ts == sorted(ts)
    for a, b in zip(ps, ps[1:]):
        assert b <= a + 1e-12  # decreasing along increasing t


def test_root_uniqueness_window(dyadic):
    curve = pressure_zero(mc=dyadic, tol=1e-10)
    delta = 1e-9
    ratios = dyadic.system.ratios()
    assert float(pressure_spectral(dyadic.subshift, ratios, curve.t_star - delta)) > 0
    assert float(pressure_spectral(dyadic.subshift, ratios, curve.t_star + delta)) < 0


def test_monotonicity_in_t(dyadic):
    values = [float(pressure_at(dyadic, t, 6)) for t in (0, 0.25, 0.5, 0.75, 1.0, 1.5)]
    for a, b in zip(values, values[1:]):
        assert b < a


def test_convexity_sampled():
    mc = MoranConstruction(dyadic_pair(), golden_mean_shift(), unit_interval())
    grid = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
    vals = [float(pressure_at(mc, t, 8)) for t in grid]
    for k in range(1, len(grid) - 1):
        lam = (grid[k] - grid[k - 1]) / (grid[k + 1] - grid[k - 1])
        interp = (1 - lam) * vals[k - 1] + lam * vals[k + 1]
        assert vals[k] <= interp + 1e-12


def test_finite_level_fallback_2d():
    from morandim.maps import DiagonalAffine2D
    from morandim.moran import IfsSystem
    from morandim.systems import unit_square

    system = IfsSystem(
        (
            DiagonalAffine2D(F(1, 4), F(1, 4), F(0), F(0)),
            DiagonalAffine2D(F(1, 4), F(1, 4), F(3, 4), F(3, 4)),
        )
    )
    mc = MoranConstruction(system, full_shift(2), unit_square())
    curve = pressure_zero(mc=mc, tol=1e-6)
    assert curve.method == "finite-level"
    assert abs(curve.t_star - 0.5) < 1e-5  # two maps of ratio 1/4: dimension 1/2


def test_dimension_report_dyadic(dyadic):
    rep = dimension_report(dyadic, tol=1e-12, box_depth=10)
    assert abs(rep.t_star - 1.0) < 1e-10
    assert abs(rep.box_slope - 1.0) < 1e-6


def test_dimension_report_osc(osc):
    rep = dimension_report(osc, tol=1e-10, box_depth=12)
    assert abs(rep.box_slope - rep.t_star) < 0.05


def test_bad_inputs(dyadic):
    with pytest.raises(ValueError):
        pressure_at(dyadic, 1, 0)
    with pytest.raises(ValueError):
        pressure_zero(mc=dyadic, tol=0)
    with pytest.raises(ValueError):
        pressure_spectral(full_shift(2), [F(1, 2)], 1.0)
