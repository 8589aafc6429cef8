"""Depth-limited prefix trees standing in for compact subsets of the shift space.

Two depth-n trees are within ultrametric distance 2^-d exactly when their
prefix sets agree up to depth d, so finite trees capture compact sets to any
requested resolution and Hausdorff-metric limits become eventual per-depth
equality of node sets.
"""

from dataclasses import dataclass

from .subshift import Subshift
from .words import Word


@dataclass(frozen=True)
class CompactTree:
    """A prefix-closed set of allowed words of length <= depth.

    Every node shorter than ``depth`` has at least one child, so the tree is
    the depth-``depth`` shadow of a nonempty compact set (or the empty tree).
    """

    kappa: int
    depth: int
    nodes: frozenset[tuple[int, ...]]

    def __post_init__(self):
        if self.kappa < 2:
            raise ValueError("alphabet size must be >= 2")
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if not self.nodes:
            return
        if () not in self.nodes:
            raise ValueError("a nonempty tree must contain the root")
        children: dict[tuple, bool] = {}
        for w in self.nodes:
            if len(w) > self.depth:
                raise ValueError(f"node {w} deeper than {self.depth}")
            if any(not 1 <= s <= self.kappa for s in w):
                raise ValueError(f"node {w} has symbols outside 1..{self.kappa}")
            if w:
                if w[:-1] not in self.nodes:
                    raise ValueError(f"node {w} missing its parent")
                children[w[:-1]] = True
        for w in self.nodes:
            if len(w) < self.depth and not children.get(w, False):
                raise ValueError(f"internal node {w} has no child")

    # -- constructors ---------------------------------------------------

    @classmethod
    def empty(cls, kappa: int, depth: int) -> "CompactTree":
        return cls(kappa, depth, frozenset())

    @classmethod
    def from_leaves(cls, kappa: int, depth: int, leaves) -> "CompactTree":
        """Tree spanned by a set of depth-``depth`` words (prefix closure is taken)."""
        nodes = set()
        for leaf in leaves:
            t = tuple(leaf.symbols) if isinstance(leaf, Word) else tuple(leaf)
            if len(t) != depth:
                raise ValueError(f"leaf {t} does not have length {depth}")
            for k in range(depth + 1):
                nodes.add(t[:k])
        return cls(kappa, depth, frozenset(nodes))

    @classmethod
    def cylinder(cls, kappa: int, depth: int, word) -> "CompactTree":
        """Depth-limited tree of the cylinder set of ``word`` inside the full shift."""
        stem = tuple(word.symbols) if isinstance(word, Word) else tuple(word)
        nodes = {stem[:k] for k in range(min(len(stem), depth) + 1)}
        frontier = [stem[:depth]] if len(stem) <= depth else []
        while frontier:
            w = frontier.pop()
            if len(w) < depth:
                for s in range(1, kappa + 1):
                    child = w + (s,)
                    nodes.add(child)
                    frontier.append(child)
        return cls(kappa, depth, frozenset(nodes))

    @classmethod
    def from_subshift(cls, shift: Subshift, depth: int) -> "CompactTree":
        nodes = set()
        stack = [((), 0)]
        while stack:
            w, state = stack.pop()
            nodes.add(w)
            if len(w) < depth:
                for s in range(1, shift.kappa + 1):
                    nxt = shift.transitions[state][s]
                    if nxt is not None:
                        stack.append((w + (s,), nxt))
        return cls(shift.kappa, depth, frozenset(nodes))

    # -- queries ----------------------------------------------------------

    def level(self, n: int) -> frozenset:
        if not 0 <= n <= self.depth:
            raise ValueError(f"level {n} out of range 0..{self.depth}")
        return frozenset(w for w in self.nodes if len(w) == n)

    def level_words(self, n: int) -> set[Word]:
        return {Word(w, self.kappa) for w in self.level(n)}

    @property
    def is_empty(self) -> bool:
        return not self.nodes

    def subtree(self, word) -> "CompactTree":
        """Magnify at ``word``: the tree {w : word + w is a node}, depth reduced by |word|."""
        stem = tuple(word.symbols) if isinstance(word, Word) else tuple(word)
        if len(stem) > self.depth:
            raise ValueError(f"word of length {len(stem)} exceeds tree depth {self.depth}")
        k = len(stem)
        nodes = frozenset(w[k:] for w in self.nodes if w[:k] == stem)
        return CompactTree(self.kappa, self.depth - k, nodes)

    def truncate(self, depth: int) -> "CompactTree":
        if depth > self.depth:
            raise ValueError("cannot deepen a tree by truncation")
        return CompactTree(self.kappa, depth, frozenset(w for w in self.nodes if len(w) <= depth))


def tree_distance(a: CompactTree, b: CompactTree) -> float:
    """Symbolic Hausdorff distance between equal-depth trees: 2^-(first level of disagreement)."""
    if a.kappa != b.kappa:
        raise ValueError("alphabet mismatch")
    if a.depth != b.depth:
        raise ValueError("tree depths differ; truncate to a common depth first")
    for d in range(a.depth + 1):
        if a.level(d) != b.level(d):
            return 2.0 ** (-d)
    return 0.0
