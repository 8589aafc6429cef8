"""Finite words over the alphabet {1, ..., kappa} and the orders used on them.

Words are immutable and hashable.  The hot enumeration paths elsewhere in the
package work on raw symbol tuples and wrap results in :class:`Word` at API
boundaries; the orders defined here agree with plain tuple comparison.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Word:
    """A finite symbolic address with 1-based symbols bounded by the alphabet size."""

    symbols: tuple[int, ...]
    alphabet: int

    def __post_init__(self):
        if self.alphabet < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.alphabet}")
        for s in self.symbols:
            if not isinstance(s, int) or not 1 <= s <= self.alphabet:
                raise ValueError(f"symbol {s!r} outside 1..{self.alphabet}")

    @classmethod
    def empty(cls, alphabet: int) -> "Word":
        return cls((), alphabet)

    @classmethod
    def parse(cls, text: str, alphabet: int) -> "Word":
        """Parse a digit string like ``"1213"``; only usable for alphabets up to 9."""
        if alphabet > 9:
            raise ValueError("digit-string parsing needs alphabet <= 9; pass symbol tuples instead")
        return cls(tuple(int(c) for c in text), alphabet)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, k):
        return self.symbols[k]

    def __str__(self) -> str:
        if self.alphabet <= 9:
            return "".join(str(s) for s in self.symbols)
        return ".".join(str(s) for s in self.symbols)

    @property
    def parent(self) -> "Word":
        """The predecessor, i.e. the word with the last symbol dropped."""
        if not self.symbols:
            raise ValueError("the empty word has no predecessor")
        return Word(self.symbols[:-1], self.alphabet)

    def prefix(self, n: int) -> "Word":
        if not 0 <= n <= len(self.symbols):
            raise ValueError(f"prefix length {n} out of range")
        return Word(self.symbols[:n], self.alphabet)

    def extend(self, s: int) -> "Word":
        return Word(self.symbols + (s,), self.alphabet)

    def __add__(self, other: "Word") -> "Word":
        _check_same_alphabet(self, other)
        return Word(self.symbols + other.symbols, self.alphabet)

    def is_prefix_of(self, other: "Word") -> bool:
        _check_same_alphabet(self, other)
        return other.symbols[: len(self.symbols)] == self.symbols


def _check_same_alphabet(i: Word, j: Word) -> None:
    if i.alphabet != j.alphabet:
        raise ValueError(f"alphabet mismatch: {i.alphabet} vs {j.alphabet}")


def lcp(i: Word, j: Word) -> Word:
    """Longest common prefix of two words over the same alphabet."""
    _check_same_alphabet(i, j)
    n = 0
    for a, b in zip(i.symbols, j.symbols):
        if a != b:
            break
        n += 1
    return Word(i.symbols[:n], i.alphabet)


def is_orthogonal(i: Word, j: Word) -> bool:
    """True when the cylinders of ``i`` and ``j`` are disjoint.

    Two cylinders intersect exactly when one word is a prefix of the other,
    so both inputs must be nonempty for the question to be meaningful.
    """
    _check_same_alphabet(i, j)
    if not i.symbols or not j.symbols:
        raise ValueError("orthogonality is defined for nonempty words")
    return not (i.is_prefix_of(j) or j.is_prefix_of(i))


def lex_less(i: Word, j: Word) -> bool:
    """Strict lexicographic order: a proper prefix precedes its extensions,
    otherwise the first differing symbols decide.  Coincides with tuple order.
    """
    _check_same_alphabet(i, j)
    return i.symbols < j.symbols
