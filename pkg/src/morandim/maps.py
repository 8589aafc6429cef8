"""Exact-rational contraction maps on the line and the plane.

Only homotheties x -> r*x + a and diagonal affine maps (x, y) -> (r*x + a, s*y + b)
are supported; both families are closed under composition with exactly
computable parameters, which is what makes exact map-coincidence detection
possible downstream.
"""

from dataclasses import dataclass
from fractions import Fraction

from .words import Word


def _frac(v) -> Fraction:
    f = Fraction(v)
    return f


def _check_ratio(r: Fraction, name: str) -> None:
    if not 0 < r < 1:
        raise ValueError(f"contraction ratio {name}={r} outside (0, 1)")


@dataclass(frozen=True)
class Homothety1D:
    """x -> r*x + a with rational 0 < r < 1."""

    r: Fraction
    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", _frac(self.r))
        object.__setattr__(self, "a", _frac(self.a))
        _check_ratio(self.r, "r")

    dimension = 1

    def apply(self, x: Fraction) -> Fraction:
        return self.r * x + self.a

    def compose(self, other: "Homothety1D") -> "Homothety1D":
        """self after other, with exactly computed parameters."""
        return Homothety1D(self.r * other.r, self.r * other.a + self.a)

    def fixed_point(self) -> Fraction:
        return self.a / (1 - self.r)

    def signature(self) -> tuple:
        return (self.r, self.a)

    @property
    def lipschitz(self) -> Fraction:
        return self.r


@dataclass(frozen=True)
class DiagonalAffine2D:
    """(x, y) -> (r*x + a, s*y + b) with rational ratios in (0, 1)."""

    r: Fraction
    s: Fraction
    a: Fraction
    b: Fraction

    def __post_init__(self):
        for name in ("r", "s", "a", "b"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        _check_ratio(self.r, "r")
        _check_ratio(self.s, "s")

    dimension = 2

    def apply(self, point) -> tuple[Fraction, Fraction]:
        x, y = point
        return (self.r * x + self.a, self.s * y + self.b)

    def compose(self, other: "DiagonalAffine2D") -> "DiagonalAffine2D":
        return DiagonalAffine2D(
            self.r * other.r,
            self.s * other.s,
            self.r * other.a + self.a,
            self.s * other.b + self.b,
        )

    def fixed_point(self) -> tuple[Fraction, Fraction]:
        return (self.a / (1 - self.r), self.b / (1 - self.s))

    def signature(self) -> tuple:
        return (self.r, self.s, self.a, self.b)

    @property
    def lipschitz(self) -> Fraction:
        # Lipschitz constant in both the Euclidean and the sup metric
        return max(self.r, self.s)


ContractionMap = Homothety1D | DiagonalAffine2D


def compose_word(maps, word) -> ContractionMap:
    """Compose maps along a word: symbol i_1 is applied last.

    The empty word would be the identity, which is not a contraction, so it
    is rejected.
    """
    symbols = tuple(word.symbols) if isinstance(word, Word) else tuple(word)
    if not symbols:
        raise ValueError("cannot compose along the empty word")
    kappa = len(maps)
    for s in symbols:
        if not 1 <= s <= kappa:
            raise ValueError(f"symbol {s} outside 1..{kappa}")
    out = maps[symbols[0] - 1]
    for s in symbols[1:]:
        out = out.compose(maps[s - 1])
    return out
