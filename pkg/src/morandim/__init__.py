"""morandim: exact symbolic dynamics for Moran constructions and IFS attractors."""

__version__ = "0.1.0"

from .maps import DiagonalAffine2D, Homothety1D, compose_word
from .moran import (
    BudgetExceededError,
    Diameter,
    IfsSystem,
    MoranConstruction,
    SeedInterval,
    SeedRect,
    seed_set,
)
from .subshift import EmptySubshiftError, Subshift, full_shift
from .trees import CompactTree, tree_distance
from .words import Word, is_orthogonal, lcp, lex_less

__all__ = [
    "BudgetExceededError",
    "CompactTree",
    "DiagonalAffine2D",
    "Diameter",
    "EmptySubshiftError",
    "Homothety1D",
    "IfsSystem",
    "MoranConstruction",
    "SeedInterval",
    "SeedRect",
    "Subshift",
    "Word",
    "compose_word",
    "full_shift",
    "is_orthogonal",
    "lcp",
    "lex_less",
    "seed_set",
    "tree_distance",
    "__version__",
]
