"""Separation diagnostics: map coincidences, dedup subshifts, clustering scans.

The dedup construction enumerates words in the prefix-first lexicographic
order and keeps, for each exactly-coinciding composed map, the first word
that realizes it.  Every later word with an already-seen map parameter tuple
becomes a forbidden word, and its whole subtree is pruned, which is sound
because extensions of forbidden words are forbidden again.  The resulting
subshift reproduces the original attractor with pairwise distinct maps on
its allowed words.
"""

from dataclasses import dataclass
from fractions import Fraction

from .maps import ContractionMap
from .moran import (
    DEFAULT_NODE_BUDGET,
    BudgetExceededError,
    MoranConstruction,
    SeedSet,
)
from .subshift import Subshift, full_shift
from .words import Word


def map_signature(m: ContractionMap) -> tuple:
    """Canonical parameter tuple; equal signatures mean equal maps as functions."""
    return m.signature()


@dataclass(frozen=True)
class DedupResult:
    """Truncated forbidden set plus level statistics from the dedup walk.

    ``forbidden_words`` is the factor-minimal presentation of the discovered
    duplicates; the full set is its closure under extension on both sides.
    """

    subshift: Subshift
    forbidden_words: tuple[Word, ...]
    depth: int
    gamma_counts: tuple[int, ...]  # allowed-word counts for lengths 1..depth
    duplicate_counts: tuple[int, ...]  # duplicates discovered per length 1..depth
    distinct_maps_per_level: tuple[int, ...] | None
    exhaustive: bool  # True when coincidences cannot cross lengths (equal ratios)


def _ratio_key(m: ContractionMap) -> tuple:
    return (m.r,) if m.dimension == 1 else (m.r, m.s)


def dedup(system, depth: int, budget: int = DEFAULT_NODE_BUDGET) -> DedupResult:
    """Forbidden words up to ``depth`` from exact map coincidences.

    Equal-ratio systems are walked level by level (coinciding maps always have
    equal word lengths there).  Mixed-ratio systems are walked depth first in
    prefix-first lexicographic order down to the exact horizon below which no
    composition can match a map realized by a word of length <= depth; that
    keeps first-seen representatives correct across lengths.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    kappa = system.kappa
    uniform = len({_ratio_key(m) for m in system.maps}) == 1

    seen: dict[tuple, tuple] = {}
    r_words: list[tuple[int, ...]] = []
    gamma = [0] * (depth + 1)
    dups = [0] * (depth + 1)

    if uniform:
        level = [((), None)]
        visited = 0
        for n in range(1, depth + 1):
            nxt = []
            for symbols, m in sorted(level):
                for s in range(1, kappa + 1):
                    child = m.compose(system.map_for(s)) if m else system.map_for(s)
                    word = symbols + (s,)
                    visited += 1
                    if visited > budget:
                        raise BudgetExceededError(
                            f"dedup exceeded {budget} nodes after completing level {n - 1}",
                            partial=_finish(system, depth, r_words, gamma, dups, n - 1, True),
                        )
                    key = map_signature(child)
                    if key in seen:
                        r_words.append(word)
                        dups[n] += 1
                    else:
                        seen[key] = word
                        gamma[n] += 1
                        nxt.append((word, child))
            level = nxt
        return _finish(system, depth, r_words, gamma, dups, depth, True)

    # mixed ratios: depth-first in prefix-first lex order, pruned by the exact
    # reachability threshold for length-<=depth coincidences
    if system.dimension == 1:
        thresholds = [min(m.r for m in system.maps) ** depth]
        components = [lambda m: m.r]
    else:
        thresholds = [
            min(m.r for m in system.maps) ** depth,
            min(m.s for m in system.maps) ** depth,
        ]
        components = [lambda m: m.r, lambda m: m.s]

    visited = 0
    stack = [((s,), system.map_for(s)) for s in range(kappa, 0, -1)]
    while stack:
        symbols, m = stack.pop()
        visited += 1
        if visited > budget:
            raise BudgetExceededError(
                f"dedup exceeded {budget} nodes; no level is complete in mixed-ratio mode",
                partial=None,
            )
        n = len(symbols)
        key = map_signature(m)
        if key in seen:
            if n <= depth:
                r_words.append(symbols)
                dups[n] += 1
            else:
                r_words.append(symbols)
            continue
        seen[key] = symbols
        if n <= depth:
            gamma[n] += 1
        for s in range(kappa, 0, -1):
            child = m.compose(system.map_for(s))
            if all(comp(child) >= thr for comp, thr in zip(components, thresholds)):
                stack.append((symbols + (s,), child))
    return _finish(system, depth, r_words, gamma, dups, depth, False)


def _finish(system, depth, r_words, gamma, dups, completed, uniform) -> DedupResult:
    kappa = system.kappa
    shift = Subshift.build(kappa, r_words)
    return DedupResult(
        subshift=shift,
        forbidden_words=tuple(
            Word(w, kappa) for w in sorted(shift.forbidden, key=lambda t: (len(t), t))
        ),
        depth=completed,
        gamma_counts=tuple(gamma[1 : completed + 1]),
        duplicate_counts=tuple(dups[1 : completed + 1]),
        distinct_maps_per_level=tuple(gamma[1 : completed + 1]) if uniform else None,
        exhaustive=uniform,
    )


def signature_census(system, depth: int, budget: int = DEFAULT_NODE_BUDGET) -> list[int]:
    """Distinct composed-map counts per level by brute enumeration of all words.

    Exponential in ``depth``; meant as an independent cross-check of dedup
    statistics and for small reports.
    """
    counts = []
    kappa = system.kappa
    level = [None]
    total = 0
    for n in range(1, depth + 1):
        nxt = []
        keys = set()
        for m in level:
            for s in range(1, kappa + 1):
                child = m.compose(system.map_for(s)) if m else system.map_for(s)
                total += 1
                if total > budget:
                    raise BudgetExceededError(
                        f"signature census exceeded {budget} nodes", partial=counts
                    )
                keys.add(map_signature(child))
                nxt.append(child)
        counts.append(len(keys))
        level = nxt
    return counts


def wsc_count(system, x, r, seed: SeedSet | None = None, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Number of distinct maps among full-shift stopping words meeting B(x, r)."""
    mc = MoranConstruction(system, full_shift(system.kappa), seed)
    words = mc.local_cluster(x, r, budget=budget)
    keys = {map_signature(system.compose(w)) for w in words}
    return len(keys)


@dataclass(frozen=True)
class ScanGrid:
    """Sample layout for clustering scans.

    Sample points are the images of the seed midpoint under all allowed words
    of length ``sample_depth``, plus any explicit extra points.  Radii are
    either given outright or form the geometric ladder rho * gamma^k.
    """

    sample_depth: int
    radii: tuple[Fraction, ...] = ()
    rho: Fraction = Fraction(1, 2)
    gamma: Fraction = Fraction(1, 2)
    ladder: int = 4
    extra_points: tuple = ()

    def radius_list(self) -> list[Fraction]:
        if self.radii:
            return [Fraction(r) for r in self.radii]
        return [Fraction(self.rho) * Fraction(self.gamma) ** k for k in range(self.ladder)]


@dataclass(frozen=True)
class ClusterReport:
    """Per-sample cluster counts; a certified lower bound for the sup, never a proof."""

    mode: str  # "words" or "maps"
    samples: tuple  # (point, radius, count) triples, deterministic order
    max_count: int
    witness_point: object
    witness_radius: Fraction
    stabilized: bool
    sample_depth: int
    n_points: int

    def counts_for_radius(self, r: Fraction) -> list[int]:
        return [c for (_, rr, c) in self.samples if rr == r]


def fcp_scan(
    mc: MoranConstruction,
    grid: ScanGrid,
    mode: str = "words",
    budget: int = DEFAULT_NODE_BUDGET,
) -> ClusterReport:
    """Scan cluster sizes over a finite grid of centers and radii.

    ``mode="words"`` counts stopping words whose sets meet the ball;
    ``mode="maps"`` counts distinct composed maps instead, evaluated on the
    full shift of the same system.
    """
    if mode not in ("words", "maps"):
        raise ValueError("mode must be 'words' or 'maps'")
    anchor = mc.seed.midpoint()
    points = []
    seen_pts = set()
    for symbols in mc.subshift.words(grid.sample_depth):
        m = mc.system.compose(symbols)
        p = m.apply(anchor)
        if p not in seen_pts:
            seen_pts.add(p)
            points.append(p)
    for p in grid.extra_points:
        q = mc._check_point(p)
        if q not in seen_pts:
            seen_pts.add(q)
            points.append(q)
    if not points:
        raise ValueError("empty sample grid")
    radii = grid.radius_list()
    if not radii:
        raise ValueError("empty radius ladder")

    full_mc = None
    if mode == "maps":
        full_mc = MoranConstruction(mc.system, full_shift(mc.system.kappa), mc.seed)

    samples = []
    best = (-1, None, None)
    for p in points:
        for r in radii:
            if mode == "words":
                count = len(mc.local_cluster(p, r, budget=budget))
            else:
                words = full_mc.local_cluster(p, r, budget=budget)
                count = len({map_signature(mc.system.compose(w)) for w in words})
            samples.append((p, r, count))
            if count > best[0]:
                best = (count, p, r)

    by_point: dict = {}
    for p, r, c in samples:
        by_point.setdefault(p, []).append((r, c))
    stabilized = True
    if len(radii) >= 2:
        for p, rows in by_point.items():
            rows.sort(key=lambda rc: rc[0], reverse=True)
            if rows[-1][1] != rows[-2][1]:
                stabilized = False
                break
    return ClusterReport(
        mode=mode,
        samples=tuple(samples),
        max_count=best[0],
        witness_point=best[1],
        witness_radius=best[2],
        stabilized=stabilized,
        sample_depth=grid.sample_depth,
        n_points=len(points),
    )
