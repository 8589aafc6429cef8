"""Ready-made systems used across the test suite, the scripts, and the demos."""

from fractions import Fraction

from .maps import DiagonalAffine2D, Homothety1D
from .moran import IfsSystem, MoranConstruction, SeedInterval, SeedRect
from .subshift import Subshift, full_shift

F = Fraction


def dyadic_pair() -> IfsSystem:
    """x/2 and x/2 + 1/2; the unit interval split into exact halves."""
    return IfsSystem((Homothety1D(F(1, 2), F(0)), Homothety1D(F(1, 2), F(1, 2))))


def overlap_three_halves() -> IfsSystem:
    """x/2, x/2 + 1/4, x/2 + 1/2; heavy exact overlaps, the dedup workhorse."""
    return IfsSystem(
        (
            Homothety1D(F(1, 2), F(0)),
            Homothety1D(F(1, 2), F(1, 4)),
            Homothety1D(F(1, 2), F(1, 2)),
        )
    )


def osc_gap_system() -> IfsSystem:
    """x/2, x/5 + 1/2, x/7 + 6/7; touching pieces, a single first-level gap."""
    return IfsSystem(
        (
            Homothety1D(F(1, 2), F(0)),
            Homothety1D(F(1, 5), F(1, 2)),
            Homothety1D(F(1, 7), F(6, 7)),
        )
    )


def affine_disjoint_projections() -> IfsSystem:
    """Diagonal affine maps whose open x- and y-projection intervals are pairwise disjoint."""
    return IfsSystem(
        (
            DiagonalAffine2D(F(1, 3), F(1, 4), F(0), F(0)),
            DiagonalAffine2D(F(1, 3), F(1, 4), F(1, 3), F(1, 4)),
            DiagonalAffine2D(F(1, 3), F(1, 4), F(2, 3), F(1, 2)),
        )
    )


def affine_shared_column() -> IfsSystem:
    """Two maps sharing the vertical data (same s and b) plus a flat third map.

    Symbols 1 and 2 have equal heights and equal vertical offsets while the
    third map is wider than it is tall, which makes ball counts blow up along
    its iterates.
    """
    return IfsSystem(
        (
            DiagonalAffine2D(F(1, 4), F(1, 2), F(0), F(0)),
            DiagonalAffine2D(F(1, 4), F(1, 2), F(1, 2), F(0)),
            DiagonalAffine2D(F(1, 4), F(1, 2), F(0), F(1, 2)),
        )
    )


def unit_interval() -> SeedInterval:
    return SeedInterval(F(0), F(1))


def unit_square() -> SeedRect:
    return SeedRect(F(0), F(1), F(0), F(1))


def golden_mean_shift() -> Subshift:
    return Subshift.build(2, [(2, 2)])


def lazy_ladder_shift() -> Subshift:
    """Forbid the factor 21: the language 1^a 2^b with linear word growth."""
    return Subshift.build(2, [(2, 1)])


def dyadic_full(seed=None) -> MoranConstruction:
    return MoranConstruction(dyadic_pair(), full_shift(2), seed or unit_interval())


def osc_gap_full() -> MoranConstruction:
    return MoranConstruction(osc_gap_system(), full_shift(3), unit_interval())
