from fractions import Fraction as F

import pytest

from morandim.maps import Homothety1D
from morandim.moran import IfsSystem, MoranConstruction
from morandim.separation import (
    ClusterReport,
    ScanGrid,
    dedup,
    fcp_scan,
    map_signature,
    signature_census,
    wsc_count,
)
from morandim.subshift import full_shift
from morandim.systems import (
    affine_disjoint_projections,
    affine_shared_column,
    dyadic_pair,
    overlap_three_halves,
    unit_interval,
    unit_square,
)


def brute_distinct_maps(system, n):
    """Oracle: distinct composed maps at level n by full enumeration."""
    keys = set()
    stack = [(0, None)]
    while stack:
        depth, m = stack.pop()
        if depth == n:
            keys.add(map_signature(m))
            continue
        for s in range(1, system.kappa + 1):
            child = m.compose(system.map_for(s)) if m else system.map_for(s)
            stack.append((depth + 1, child))
    return len(keys)


def test_dedup_overlap3_level2(overlap3):
    res = dedup(overlap3, 2)
    assert {str(w) for w in res.forbidden_words} == {"21", "31"}
    assert res.gamma_counts == (3, 7)
    assert res.exhaustive


def test_dedup_overlap3_matches_oracle(overlap3):
    res = dedup(overlap3, 7)
    oracle = [brute_distinct_maps(overlap3, n) for n in range(1, 8)]
    assert list(res.gamma_counts) == oracle
    assert oracle == [2 ** (n + 1) - 1 for n in range(1, 8)]
    assert signature_census(overlap3, 6) == oracle[:6]


def test_dedup_trivial_for_injective_coding():
    res = dedup(dyadic_pair(), 6)
    assert res.forbidden_words == ()
    assert res.subshift.is_full_shift()
    assert res.gamma_counts == (2, 4, 8, 16, 32, 64)


def test_dedup_soundness(overlap3):
    # every composed map at level <= 4 is realized by an allowed word, and
    # allowed words have pairwise distinct parameter tuples
    res = dedup(overlap3, 4)
    allowed_keys = set()
    for n in range(1, 5):
        for word in res.subshift.words(n):
            key = map_signature(overlap3.compose(word))
            assert key not in allowed_keys
            allowed_keys.add(key)
    all_keys = set()
    stack = [((), None)]
    while stack:
        word, m = stack.pop()
        if word:
            all_keys.add(map_signature(m))
        if len(word) < 4:
            for s in range(1, 4):
                child = m.compose(overlap3.map_for(s)) if m else overlap3.map_for(s)
                stack.append((word + (s,), child))
    assert all_keys == allowed_keys


def test_dedup_mixed_ratios_cross_length():
    # r = 1/4 equals (1/2)^2, so coincidences cross word lengths: the map of
    # word (2,) equals the map of (1, 1), and the shorter-first lex order must
    # still pick (1, 1)'s predecessor correctly ((1,1) precedes (2,))
    system = IfsSystem((Homothety1D(F(1, 2), F(0)), Homothety1D(F(1, 4), F(0)), Homothety1D(F(1, 2), F(1, 2))))
    res = dedup(system, 3)
    assert not res.exhaustive
    forb = {str(w) for w in res.forbidden_words}
    assert "2" in forb  # duplicate of the earlier word 11
    for n in range(1, 4):
        seen = set()
        for word in res.subshift.words(n):
            key = map_signature(system.compose(word))
            assert key not in seen
            seen.add(key)


def test_wsc_count_collapses_duplicates():
    dup = IfsSystem(
        (
            Homothety1D(F(1, 2), F(0)),
            Homothety1D(F(1, 2), F(1, 2)),
            Homothety1D(F(1, 2), F(1, 2)),
        )
    )
    mc = MoranConstruction(dup, full_shift(3), unit_interval())
    for x, r in [(F(1, 2), F(1, 4)), (F(1, 4), F(1, 8))]:
        words = mc.local_cluster(x, r)
        assert wsc_count(dup, x, r, unit_interval()) < len(words)


def test_wsc_equals_words_without_coincidences(dyadic):
    for x, r in [(F(1, 2), F(1, 4)), (F(0), F(1, 8)), (F(1, 3), F(1, 16))]:
        assert wsc_count(dyadic_pair(), x, r, unit_interval()) == len(dyadic.local_cluster(x, r))


def test_count_identity_after_dedup(overlap3):
    res = dedup(overlap3, 10)
    mc = MoranConstruction(overlap3, res.subshift, unit_interval())
    for k in range(9):
        x = F(k, 8)
        for r in (F(1, 8), F(1, 32), F(1, 128)):
            assert len(mc.local_cluster(x, r)) == wsc_count(overlap3, x, r, unit_interval())


def test_fcp_scan_ssc_max_one():
    ssc = IfsSystem((Homothety1D(F(1, 4), F(0)), Homothety1D(F(1, 4), F(3, 4))))
    mc = MoranConstruction(ssc, full_shift(2), unit_interval())
    rep = fcp_scan(mc, ScanGrid(sample_depth=3, radii=(F(1, 16), F(1, 64))))
    assert rep.max_count == 1
    assert rep.stabilized


def test_fcp_scan_positive_affine_bound():
    mc = MoranConstruction(affine_disjoint_projections(), full_shift(3), unit_square())
    rep = fcp_scan(mc, ScanGrid(sample_depth=4, rho=F(1, 4), gamma=F(1, 2), ladder=3))
    minr = F(1, 4)
    m = 1
    while 2 >= m * m * minr * minr:
        m += 1
    assert rep.max_count <= 4 * m + 2
    assert isinstance(rep, ClusterReport)
    assert rep.max_count in rep.counts_for_radius(rep.witness_radius)


def test_fcp_scan_negative_witness():
    system = affine_shared_column()
    mc = MoranConstruction(system, full_shift(3), unit_square())
    m, n = 7, 6
    col = system.compose((3,) * m)
    band = system.compose((3,) * m + (1,) * n)
    x = (col.a + col.r / 2, band.b + band.s / 2)
    r = F(1, 2) ** (m + n)
    rep = fcp_scan(mc, ScanGrid(sample_depth=1, radii=(r,), extra_points=(x,)))
    assert rep.max_count >= 2**n


def test_fcp_scan_maps_mode(overlap3):
    mc = MoranConstruction(overlap3, full_shift(3), unit_interval())
    words_rep = fcp_scan(mc, ScanGrid(sample_depth=2, radii=(F(1, 8),)), mode="words")
    maps_rep = fcp_scan(mc, ScanGrid(sample_depth=2, radii=(F(1, 8),)), mode="maps")
    assert maps_rep.max_count <= words_rep.max_count
    for (p1, r1, c1), (p2, r2, c2) in zip(words_rep.samples, maps_rep.samples):
        assert (p1, r1) == (p2, r2)
        assert c2 <= c1


def test_scan_empty_grid_rejected(dyadic):
    with pytest.raises(ValueError):
        fcp_scan(dyadic, ScanGrid(sample_depth=2, ladder=0))
