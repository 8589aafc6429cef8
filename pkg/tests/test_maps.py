from fractions import Fraction as F

import pytest

from morandim.maps import DiagonalAffine2D, Homothety1D, compose_word
from morandim.separation import map_signature
from morandim.systems import overlap_three_halves


def test_compose_examples():
    maps = overlap_three_halves().maps
    m21 = compose_word(maps, (2, 1))
    assert (m21.r, m21.a) == (F(1, 4), F(1, 4))
    m13 = compose_word(maps, (1, 3))
    assert (m13.r, m13.a) == (F(1, 4), F(1, 4))
    m1 = compose_word(maps, (1,))
    assert m1 == maps[0]


def test_compose_rejects_bad_words():
    maps = overlap_three_halves().maps
    with pytest.raises(ValueError):
        compose_word(maps, ())
    with pytest.raises(ValueError):
        compose_word(maps, (4,))


def test_ratio_validation():
    with pytest.raises(ValueError):
        Homothety1D(F(3, 2), F(0))
    with pytest.raises(ValueError):
        DiagonalAffine2D(F(1, 2), F(1), F(0), F(0))


def test_fixed_points():
    assert Homothety1D(F(1, 2), F(1, 2)).fixed_point() == 1
    assert DiagonalAffine2D(F(1, 2), F(1, 3), F(0), F(2, 3)).fixed_point() == (0, 1)


def test_signatures_detect_equality():
    maps = overlap_three_halves().maps
    assert map_signature(compose_word(maps, (2, 1))) == map_signature(compose_word(maps, (1, 3)))
    assert map_signature(maps[0]) != map_signature(maps[1])
    # canonical lowest terms regardless of construction route
    assert map_signature(Homothety1D(F(2, 4), F(3, 6))) == (F(1, 2), F(1, 2))


def test_2d_composition():
    a = DiagonalAffine2D(F(1, 2), F(1, 3), F(1, 4), F(0))
    b = DiagonalAffine2D(F(1, 3), F(1, 2), F(0), F(1, 2))
    ab = a.compose(b)
    assert ab.apply((F(1), F(1))) == a.apply(b.apply((F(1), F(1))))
    assert (ab.r, ab.s) == (F(1, 6), F(1, 6))
