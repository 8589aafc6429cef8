"""Symbolic magnification: miniset families, branching counts, Assouad estimates.

For a subshift, the depth-n shadow of a magnified set depends only on the
follower state of the magnifying word, so enumerating reachable states gives
the complete family of depth-n microset shadows.  For a finite tree the family
is read off all magnifications that fit the horizon and is flagged partial.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .subshift import Subshift
from .trees import CompactTree
from .words import Word


@dataclass(frozen=True)
class MicrosetFamily:
    """All distinct depth-n shadows of magnifications, with realizing words."""

    depth: int
    members: tuple[CompactTree, ...]
    provenance: tuple[Word, ...]  # one realizing magnification word per member
    complete: bool

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(m.level(self.depth)) for m in self.members)

    def max_size(self) -> int:
        return max(self.sizes())


def _state_tree(shift: Subshift, state: int, depth: int) -> frozenset:
    nodes = set()
    stack = [((), state)]
    while stack:
        w, u = stack.pop()
        nodes.add(w)
        if len(w) < depth:
            for s in range(1, shift.kappa + 1):
                v = shift.transitions[u][s]
                if v is not None:
                    stack.append((w + (s,), v))
    return frozenset(nodes)


def _shortest_words_to_states(shift: Subshift) -> dict[int, tuple[int, ...]]:
    """Lex-least shortest word reaching each live state from the initial one."""
    reach = {0: ()}
    frontier = [0]
    while frontier:
        nxt = []
        for u in sorted(frontier, key=lambda q: reach[q]):
            for s in range(1, shift.kappa + 1):
                v = shift.transitions[u][s]
                if v is not None and v not in reach:
                    reach[v] = reach[u] + (s,)
                    nxt.append(v)
        frontier = nxt
    return reach


def microset_family(source, n: int) -> MicrosetFamily:
    """Distinct depth-n shadows of all magnifications of the source set.

    A :class:`Subshift` source yields a complete family (one candidate per
    reachable follower state, deduplicated by content).  A :class:`CompactTree`
    source enumerates the magnifications its depth allows and is flagged
    partial, since deeper magnification words are out of reach.
    """
    if n < 1:
        raise ValueError("depth must be >= 1")
    seen: dict[frozenset, tuple[int, ...]] = {}
    if isinstance(source, Subshift):
        words = _shortest_words_to_states(source)
        for state, word in sorted(words.items(), key=lambda kv: (len(kv[1]), kv[1])):
            tree = _state_tree(source, state, n)
            if tree not in seen:
                seen[tree] = word
        kappa = source.kappa
        complete = True
    elif isinstance(source, CompactTree):
        if n > source.depth:
            raise ValueError("requested depth exceeds the tree horizon")
        for node in sorted(source.nodes, key=lambda w: (len(w), w)):
            if len(node) > source.depth - n:
                continue
            sub = source.subtree(node).truncate(n)
            if sub.is_empty:
                continue
            if sub.nodes not in seen:
                seen[sub.nodes] = node
        kappa = source.kappa
        complete = False
    else:
        raise TypeError("source must be a Subshift or a CompactTree")

    members = []
    provenance = []
    for nodes, word in sorted(seen.items(), key=lambda kv: sorted(kv[0])):
        members.append(CompactTree(kappa, n, nodes))
        provenance.append(Word(word, kappa))
    return MicrosetFamily(
        depth=n, members=tuple(members), provenance=tuple(provenance), complete=complete
    )


def branching_count(source, n: int) -> int:
    """Largest number of depth-n words over all magnification shadows.

    For subshifts this is the max over states of the exact path count, done
    with integer dynamic programming, so large n stays cheap and exact.
    """
    if n < 0:
        raise ValueError("depth must be >= 0")
    if isinstance(source, Subshift):
        return _branching_from_state(source, n)
    if isinstance(source, CompactTree):
        fam = microset_family(source, n)
        return fam.max_size()
    raise TypeError("source must be a Subshift or a CompactTree")


def _branching_from_state(shift: Subshift, n: int) -> int:
    # f_k(u) = number of length-k words readable from state u
    f = [1] * shift.n_states
    for _ in range(n):
        g = [0] * shift.n_states
        for u in range(shift.n_states):
            total = 0
            for s in range(1, shift.kappa + 1):
                v = shift.transitions[u][s]
                if v is not None:
                    total += f[v]
            g[u] = total
        f = g
    return max(f)


class HeterogeneousRatiosError(ValueError):
    """The homogeneous-diameter hypothesis fails: contraction ratios differ."""


@dataclass(frozen=True)
class AssouadEstimate:
    """Branching-exponent table with its certified upper bound.

    ``fekete_bound`` is a true upper bound for the limit exponent because the
    log-counts are subadditive.  ``estimate`` is the difference quotient at the
    largest requested level, the better-converging point estimate.
    """

    alpha_bar: Fraction
    n_max: int
    t_table: tuple[tuple[int, float], ...]
    diff_quotients: tuple[tuple[int, float], ...]
    fekete_bound: float
    estimate: float


def assouad_estimate(source, n_max: int, alpha_bar) -> AssouadEstimate:
    """Assouad-dimension estimate for a homogeneous-ratio construction.

    Requires every cylinder diameter to scale like alpha_bar^length; callers
    with an IFS at hand should go through :func:`assouad_estimate_for`, which
    refuses mixed-ratio systems instead of silently misreporting.
    """
    alpha_bar = Fraction(alpha_bar)
    if not 0 < alpha_bar < 1:
        raise ValueError("alpha_bar must lie in (0, 1)")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    log_inv_alpha = -math.log(float(alpha_bar))
    ns = sorted({2**k for k in range(1, n_max.bit_length())} | {n_max, 2 * n_max})
    counts = {n: branching_count(source, n) for n in ns}
    t_table = tuple(
        (n, math.log(counts[n]) / (n * log_inv_alpha)) for n in ns if n <= n_max
    )
    diff = []
    for n in ns:
        if 2 * n in counts and n <= n_max:
            q = (math.log(counts[2 * n]) - math.log(counts[n])) / (n * log_inv_alpha)
            diff.append((n, q))
    fekete = min(t for _, t in t_table)
    estimate = diff[-1][1] if diff else t_table[-1][1]
    return AssouadEstimate(
        alpha_bar=alpha_bar,
        n_max=n_max,
        t_table=t_table,
        diff_quotients=tuple(diff),
        fekete_bound=fekete,
        estimate=estimate,
    )


def assouad_estimate_for(mc, n_max: int) -> AssouadEstimate:
    """Estimate for a Moran construction, refusing non-homogeneous ratios."""
    system = mc.system
    if system.dimension == 1:
        ratios = {m.r for m in system.maps}
    else:
        ratios = {m.r for m in system.maps} | {m.s for m in system.maps}
    if len(ratios) != 1:
        raise HeterogeneousRatiosError(
            "contraction ratios are not all equal; diameters do not scale uniformly"
        )
    return assouad_estimate(mc.subshift, n_max, next(iter(ratios)))
