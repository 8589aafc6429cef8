from fractions import Fraction as F

import pytest

from morandim.maps import DiagonalAffine2D, Homothety1D
from morandim.moran import (
    Diameter,
    IfsSystem,
    MoranConstruction,
    SeedInterval,
    SeedRect,
    seed_set,
)
from morandim.subshift import full_shift
from morandim.systems import (
    dyadic_full,
    dyadic_pair,
    osc_gap_full,
    osc_gap_system,
    unit_interval,
    unit_square,
)
from morandim.words import Word, is_orthogonal


def test_canonical_seed_1d():
    seed = dyadic_pair().canonical_seed()
    assert (seed.lo, seed.hi) == (F(-1), F(2))
    assert seed_set(dyadic_pair(), unit_interval()) == unit_interval()


def test_seed_override_must_be_invariant():
    with pytest.raises(ValueError):
        seed_set(dyadic_pair(), SeedInterval(F(0), F(1, 4)))


def test_degenerate_system_rejected():
    with pytest.raises(ValueError):
        IfsSystem((Homothety1D(F(1, 2), F(0)), Homothety1D(F(1, 3), F(0))))


def test_osc_seed_invariant():
    seed = seed_set(osc_gap_system(), unit_interval())
    assert (seed.lo, seed.hi) == (F(0), F(1))


def test_diameters(dyadic, osc):
    assert dyadic.diameter((1, 1, 1)) == F(1, 8)
    assert dyadic.diameter(Word((1, 1, 1), 2)).exact == F(1, 8)
    assert osc.diameter((2,)) == F(1, 5)
    assert dyadic.diameter(()) == F(1)


def test_diameter_2d():
    system = IfsSystem(
        (
            DiagonalAffine2D(F(1, 2), F(1, 3), F(0), F(0)),
            DiagonalAffine2D(F(1, 2), F(1, 3), F(1, 2), F(2, 3)),
        )
    )
    mc = MoranConstruction(system, full_shift(2), unit_square())
    d = mc.diameter((1,))
    assert d.sq == F(13, 36)
    assert d.exact is None


def test_diameter_comparisons():
    a = Diameter(F(13, 36))  # sqrt(13)/6 = 0.60092...
    assert a > F(1, 2)
    assert a > F(3, 5)
    assert a <= F(61, 100)
    assert Diameter.from_value(F(1, 4)) * Diameter.from_value(F(1, 2)) == F(1, 8)


def test_stopping_set_dyadic(dyadic):
    words = dyadic.stopping_set(F(1, 4))
    assert {str(w) for w in words} == {"11", "12", "21", "22"}


def test_stopping_set_osc(osc):
    words = {str(w) for w in osc.stopping_set(F(1, 5))}
    assert words == {"111", "112", "113", "12", "13", "2", "3"}


def test_stopping_set_two_sided(osc):
    r = F(1, 5)
    for w in osc.stopping_set(r):
        assert osc.diameter(w) <= r
        assert osc.diameter(w.parent) > r


def test_stopping_set_large_radius(dyadic):
    # at or above the seed diameter the first level is returned whole
    assert {str(w) for w in dyadic.stopping_set(F(1))} == {"1", "2"}
    assert {str(w) for w in dyadic.stopping_set(F(3))} == {"1", "2"}


def test_stopping_set_antichain_and_cover(osc):
    words = osc.stopping_set(F(1, 7))
    for i in words:
        for j in words:
            if i != j:
                assert is_orthogonal(i, j)
    # every infinite word has exactly one prefix in the stopping set: check on
    # all words of a depth beyond the longest stopping word
    depth = max(len(w) for w in words) + 1
    prefixes = {w.symbols for w in words}
    for long_word in osc.subshift.words(depth):
        hits = [k for k in range(1, depth + 1) if long_word[:k] in prefixes]
        assert len(hits) == 1


def test_local_cluster(dyadic):
    assert {str(w) for w in dyadic.local_cluster(F(1, 2), F(1, 4))} == {"11", "12", "21", "22"}
    # closed balls and closed pieces: tangency at 1/8 keeps both neighbors
    assert {str(w) for w in dyadic.local_cluster(F(0), F(1, 8))} == {"111", "112"}
    assert dyadic.local_cluster(F(10), F(1, 4)) == []


def test_local_cluster_is_cluster_of_stopping_set(osc):
    r = F(1, 6)
    cluster = set(osc.local_cluster(F(1, 2), r))
    assert cluster <= set(osc.stopping_set(r))


def test_verify_axioms(dyadic, osc):
    rep = dyadic.verify_axioms(5)
    assert rep.ok
    assert rep.alpha_lower == rep.alpha_upper == F(1, 2)
    assert rep.similarity_multiplicative
    assert rep.d_constant_sq == 1  # D = 1/diam(W) = 1

    rep2 = osc.verify_axioms(4)
    assert rep2.ok
    assert rep2.alpha_lower == F(1, 7)
    assert rep2.alpha_upper == F(1, 2)


def test_verify_axioms_2d():
    system = IfsSystem(
        (
            DiagonalAffine2D(F(1, 3), F(1, 4), F(0), F(0)),
            DiagonalAffine2D(F(1, 3), F(1, 4), F(2, 3), F(3, 4)),
        )
    )
    mc = MoranConstruction(system, full_shift(2), unit_square())
    rep = mc.verify_axioms(4)
    assert rep.ok
    assert rep.alpha_lower == F(1, 4)
    assert rep.similarity_multiplicative is None


def test_broken_nesting_detected():
    # second map is not a contraction into the claimed seed
    system = IfsSystem((Homothety1D(F(1, 2), F(0)), Homothety1D(F(1, 2), F(3, 4))))
    with pytest.raises(ValueError):
        MoranConstruction(system, full_shift(2), unit_interval())


def test_disallowed_word_rejected(golden):
    mc = MoranConstruction(dyadic_pair(), golden, unit_interval())
    with pytest.raises(ValueError):
        mc.diameter((2, 2))
    assert mc.diameter((2, 1)) == F(1, 4)


def test_rect_ball_predicates():
    rect = SeedRect(F(0), F(1, 2), F(0), F(1, 2))
    assert rect.meets_ball((F(1), F(1, 2)), F(1, 2))
    assert not rect.meets_ball((F(1), F(1)), F(1, 2))
    assert rect.contained_in_ball((F(1, 4), F(1, 4)), F(1, 2))
