"""Markov measures on subshifts: conditionals, magnification steps, entropy,
and symbolic versus geometric local dimensions.

Cylinder masses are exact rationals.  Logarithms are accumulated in floats,
and every empirical routine takes an explicit seed so that reported numbers
are reproducible.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .microsets import branching_count, microset_family
from .moran import MoranConstruction
from .subshift import Subshift, full_shift, strongly_connected_components
from .words import Word

F = Fraction


class ZeroMassError(ValueError):
    """Conditioning or stepping on a cylinder of measure zero."""


@dataclass(frozen=True)
class MarkovMeasure:
    """Initial distribution plus a row-stochastic transition matrix, exact entries.

    The measure must be supported inside its subshift: for every minimal
    forbidden word some transition along it must vanish (or its first symbol
    must be unreachable), which is checked at construction.
    """

    shift: Subshift
    initial: tuple[F, ...]
    rows: tuple[tuple[F, ...], ...]

    def __post_init__(self):
        kappa = self.shift.kappa
        initial = tuple(F(p) for p in self.initial)
        rows = tuple(tuple(F(p) for p in row) for row in self.rows)
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "rows", rows)
        if len(initial) != kappa or len(rows) != kappa or any(len(r) != kappa for r in rows):
            raise ValueError("initial vector and matrix must have one entry per symbol")
        if any(p < 0 for p in initial) or sum(initial) != 1:
            raise ValueError("initial vector must be a probability vector")
        for a, row in enumerate(rows, start=1):
            if any(p < 0 for p in row) or sum(row) != 1:
                raise ValueError(f"transition row {a} must be a probability vector")
        for w in self.shift.forbidden:
            head = initial[w[0] - 1] if len(w) == 1 else None
            inner = F(1)
            for a, b in zip(w, w[1:]):
                inner *= rows[a - 1][b - 1]
            if len(w) == 1:
                reachable = head > 0 or any(rows[a][w[0] - 1] > 0 for a in range(kappa))
                if reachable:
                    raise ValueError(f"measure charges the forbidden symbol {w}")
            elif inner > 0:
                raise ValueError(f"measure charges the forbidden word {w}")

    @classmethod
    def bernoulli(cls, weights, shift: Subshift | None = None) -> "MarkovMeasure":
        weights = tuple(F(p) for p in weights)
        if shift is None:
            shift = full_shift(len(weights))
        return cls(shift, weights, tuple(weights for _ in weights))

    @classmethod
    def markov(cls, initial, rows, shift: Subshift | None = None) -> "MarkovMeasure":
        if shift is None:
            shift = full_shift(len(tuple(initial)))
        return cls(shift, tuple(initial), tuple(tuple(r) for r in rows))

    @property
    def kappa(self) -> int:
        return self.shift.kappa

    # -- masses -------------------------------------------------------------

    def cylinder_mass(self, word) -> F:
        symbols = tuple(word.symbols) if isinstance(word, Word) else tuple(word)
        if not symbols:
            return F(1)
        if not self.shift.contains(symbols):
            return F(0)
        mass = self.initial[symbols[0] - 1]
        for a, b in zip(symbols, symbols[1:]):
            if mass == 0:
                return F(0)
            mass *= self.rows[a - 1][b - 1]
        return mass

    def log_cylinder_mass(self, word) -> float:
        """Sum of per-step log masses; -inf on a null cylinder."""
        symbols = tuple(word.symbols) if isinstance(word, Word) else tuple(word)
        if not symbols:
            return 0.0
        if not self.shift.contains(symbols):
            return float("-inf")
        p = self.initial[symbols[0] - 1]
        if p == 0:
            return float("-inf")
        total = math.log(p)
        for a, b in zip(symbols, symbols[1:]):
            q = self.rows[a - 1][b - 1]
            if q == 0:
                return float("-inf")
            total += math.log(q)
        return total

    # -- conditionals and magnification steps --------------------------------

    def conditional(self, word) -> "MarkovMeasure":
        """The measure of the magnified cylinder: mass(word + w) / mass(word)."""
        symbols = tuple(word.symbols) if isinstance(word, Word) else tuple(word)
        if not symbols:
            return self
        if self.cylinder_mass(symbols) == 0:
            raise ZeroMassError(f"cylinder {symbols} carries no mass")
        return MarkovMeasure(self.shift, self.rows[symbols[-1] - 1], self.rows)

    def information(self, word_or_symbol) -> float:
        """Minus the log mass of the first symbol; 0 off the support."""
        if isinstance(word_or_symbol, int):
            first = word_or_symbol
        else:
            symbols = (
                tuple(word_or_symbol.symbols)
                if isinstance(word_or_symbol, Word)
                else tuple(word_or_symbol)
            )
            if not symbols:
                raise ValueError("information needs at least one symbol")
            first = symbols[0]
        p = self.initial[first - 1]
        if p == 0:
            return 0.0
        return -math.log(p)


@dataclass(frozen=True)
class CpState:
    """A measure together with the word consumed so far by magnification steps."""

    measure: MarkovMeasure
    consumed: Word


def cp_start(measure: MarkovMeasure) -> CpState:
    return CpState(measure, Word.empty(measure.kappa))


def cp_step(state: CpState, symbol: int) -> CpState:
    """Condition on one more symbol and record it; rejects null symbols."""
    p = state.measure.initial[symbol - 1]
    if p == 0:
        raise ZeroMassError(f"symbol {symbol} carries no mass at this state")
    return CpState(state.measure.conditional((symbol,)), state.consumed.extend(symbol))


# -- entropy ----------------------------------------------------------------


def stationary_distribution(measure: MarkovMeasure) -> tuple[F, ...]:
    """Exact stationary vector of an irreducible chain, by Gaussian elimination."""
    kappa = measure.kappa
    support = [[1 if measure.rows[a][b] > 0 else 0 for b in range(kappa)] for a in range(kappa)]
    if len(strongly_connected_components(support)) != 1:
        raise ValueError("the transition structure is not irreducible")
    # solve pi (P - I) = 0 with sum pi = 1
    cols = kappa
    mat = [[measure.rows[b][a] - (1 if a == b else 0) for b in range(cols)] for a in range(cols)]
    for b in range(cols):
        mat[cols - 1][b] = F(1)  # replace one redundant equation by normalization
    rhs = [F(0)] * (cols - 1) + [F(1)]
    # forward elimination with partial pivoting on exact rationals
    for col in range(cols):
        pivot = next((r for r in range(col, cols) if mat[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular stationary system; chain not irreducible?")
        mat[col], mat[pivot] = mat[pivot], mat[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / mat[col][col]
        mat[col] = [v * inv for v in mat[col]]
        rhs[col] = rhs[col] * inv
        for r in range(cols):
            if r != col and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [v - factor * w for v, w in zip(mat[r], mat[col])]
                rhs[r] = rhs[r] - factor * rhs[col]
    return tuple(rhs)


def entropy_exact(measure: MarkovMeasure) -> float:
    """Entropy rate -sum_a pi_a sum_b P_ab log P_ab of an irreducible chain."""
    pi = stationary_distribution(measure)
    total = 0.0
    for a in range(measure.kappa):
        for b in range(measure.kappa):
            p = measure.rows[a][b]
            if p > 0:
                total -= float(pi[a]) * float(p) * math.log(p)
    return total


@dataclass(frozen=True)
class EntropyEstimate:
    mean: float
    stderr: float
    n: int
    samples: int
    seed: int


def sample_path(measure: MarkovMeasure, n: int, rng: np.random.Generator) -> tuple[int, ...]:
    init = np.array([float(p) for p in measure.initial])
    rows = np.array([[float(p) for p in row] for row in measure.rows])
    out = [int(rng.choice(measure.kappa, p=init)) + 1]
    for _ in range(n - 1):
        out.append(int(rng.choice(measure.kappa, p=rows[out[-1] - 1])) + 1)
    return tuple(out)


def _sample_paths_array(measure: MarkovMeasure, n: int, count: int, rng) -> np.ndarray:
    """Vectorized path sampling: one row per path, entries are symbols."""
    init = np.array([float(p) for p in measure.initial])
    rows = np.array([[float(p) for p in row] for row in measure.rows])
    init_cdf = np.cumsum(init)
    row_cdf = np.cumsum(rows, axis=1)
    paths = np.empty((count, n), dtype=np.int64)
    u = rng.random(count)
    paths[:, 0] = np.searchsorted(init_cdf, u, side="right")
    for k in range(1, n):
        u = rng.random(count)
        prev = paths[:, k - 1]
        cdf = row_cdf[prev]
        paths[:, k] = (u[:, None] > cdf).sum(axis=1)
    return paths + 1


def entropy_empirical(
    measure: MarkovMeasure, n: int, samples: int, seed: int
) -> EntropyEstimate:
    """Mean of -(1/n) log mass over sampled cylinders, with its standard error."""
    rng = np.random.default_rng(seed)
    paths = _sample_paths_array(measure, n, samples, rng)
    logp_init = np.array(
        [math.log(p) if p > 0 else -np.inf for p in map(float, measure.initial)]
    )
    logp_rows = np.array(
        [[math.log(p) if p > 0 else -np.inf for p in map(float, row)] for row in measure.rows]
    )
    totals = logp_init[paths[:, 0] - 1].copy()
    for k in range(1, n):
        totals += logp_rows[paths[:, k - 1] - 1, paths[:, k] - 1]
    values = -totals / n
    mean = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(samples)) if samples > 1 else float("nan")
    return EntropyEstimate(mean=mean, stderr=stderr, n=n, samples=samples, seed=seed)


# -- local dimensions --------------------------------------------------------


@dataclass(frozen=True)
class LocalDimSample:
    quotient: float  # at full length n
    tail_min: float  # running minimum over the second half of the path
    halfway: float


@dataclass(frozen=True)
class LocalDimStats:
    n: int
    samples: tuple[LocalDimSample, ...]
    seed: int

    @property
    def mean(self) -> float:
        return sum(s.quotient for s in self.samples) / len(self.samples)

    @property
    def mean_tail_min(self) -> float:
        return sum(s.tail_min for s in self.samples) / len(self.samples)


def local_dim_symbolic(
    measure: MarkovMeasure,
    mc: MoranConstruction,
    n: int,
    samples: int,
    seed: int,
) -> LocalDimStats:
    """Quotients log mass / log diameter along sampled cylinders.

    The diameter of a 1D cylinder is the product of the ratios times the seed
    width, so both logs accumulate stepwise; the reported tail minimum over
    the second half of the path is the finite stand-in for a liminf.
    """
    if mc.system.dimension != 1:
        raise ValueError("symbolic local dimension is implemented on the line")
    if measure.kappa != mc.system.kappa:
        raise ValueError("alphabet mismatch")
    rng = np.random.default_rng(seed)
    paths = _sample_paths_array(measure, n, samples, rng)
    logp_init = np.array([math.log(p) if p > 0 else -np.inf for p in map(float, measure.initial)])
    logp_rows = np.array(
        [[math.log(p) if p > 0 else -np.inf for p in map(float, row)] for row in measure.rows]
    )
    log_ratios = np.array([math.log(float(m.r)) for m in mc.system.maps])
    width = float(mc.seed.hi - mc.seed.lo)

    out = []
    half = n // 2
    for row in paths:
        log_mass = logp_init[row[0] - 1]
        log_diam = log_ratios[row[0] - 1] + math.log(width)
        tail_min = None
        halfway = None
        for k in range(1, n):
            log_mass += logp_rows[row[k - 1] - 1, row[k] - 1]
            log_diam += log_ratios[row[k] - 1]
            if k == half - 1:
                halfway = log_mass / log_diam
            if k >= half:
                q = log_mass / log_diam
                if tail_min is None or q < tail_min:
                    tail_min = q
        out.append(
            LocalDimSample(quotient=log_mass / log_diam, tail_min=tail_min, halfway=halfway)
        )
    return LocalDimStats(n=n, samples=tuple(out), seed=seed)


def ball_mass(
    measure: MarkovMeasure,
    mc: MoranConstruction,
    x,
    r,
    max_depth: int,
) -> tuple[F, F]:
    """Exact lower and upper bounds for the push-forward mass of B(x, r).

    Cylinders wholly inside the ball count in both bounds, cylinders meeting
    it count in the upper bound, and undecided cylinders are split until
    ``max_depth``.  The gap between the bounds is the total mass of boundary
    cylinders at the cutoff.
    """
    if mc.system.dimension != 1:
        raise ValueError("ball masses are implemented on the line")
    r = F(r)
    x = F(x)
    lo0, hi0 = mc.seed.lo, mc.seed.hi
    ball_lo, ball_hi = x - r, x + r
    lower = F(0)
    upper = F(0)
    trans = mc.subshift.transitions
    params = [(m.r, m.a) for m in mc.system.maps]
    stack = [((s,), trans[0][s], params[s - 1][0], params[s - 1][1], measure.initial[s - 1])
             for s in range(mc.system.kappa, 0, -1)
             if trans[0][s] is not None and measure.initial[s - 1] > 0]
    while stack:
        symbols, state, mr, ma, mass = stack.pop()
        lo = mr * lo0 + ma
        hi = mr * hi0 + ma
        if lo > ball_hi or hi < ball_lo:
            continue
        if ball_lo <= lo and hi <= ball_hi:
            lower += mass
            upper += mass
            continue
        if len(symbols) >= max_depth:
            upper += mass
            continue
        a = symbols[-1]
        for s in range(mc.system.kappa, 0, -1):
            nxt = trans[state][s]
            p = measure.rows[a - 1][s - 1]
            if nxt is not None and p > 0:
                cr, ca = params[s - 1]
                stack.append((symbols + (s,), nxt, mr * cr, mr * ca + ma, mass * p))
    return lower, upper


def local_dim_geometric(
    measure: MarkovMeasure,
    mc: MoranConstruction,
    x,
    radii,
    max_depth: int | None = None,
) -> list[tuple[F, F, F, float]]:
    """Rows (r, mass_lower, mass_upper, quotient) along a radius ladder.

    The quotient uses the upper mass, which contains the true ball mass; the
    lower bound is reported so callers can see the enclosure width.
    """
    rows = []
    for r in radii:
        r = F(r)
        depth = max_depth
        if depth is None:
            depth = max(8, int(3 * math.log(1 / float(r), 2)) + 8)
        lo, hi = ball_mass(measure, mc, x, r, depth)
        q = math.log(hi) / math.log(r) if hi > 0 else float("nan")
        rows.append((r, lo, hi, q))
    return rows


# -- branching count vs entropy ----------------------------------------------


def nn_entropy_identity(shift: Subshift, n: int) -> tuple[float, float]:
    """Uniform-measure information versus (1/n) log of the branching count.

    Builds the uniform measure on the depth-n words of the largest
    magnification shadow and evaluates its averaged cylinder information
    literally; the second component is (1/n) log N_n computed independently.
    """
    fam = microset_family(shift, n)
    sizes = fam.sizes()
    best = sizes.index(max(sizes))
    words = sorted(fam.members[best].level(n))
    count = len(words)
    mass = F(1, count)
    lhs = -sum(float(mass) * math.log(mass) for _ in words) / n
    rhs = math.log(branching_count(shift, n)) / n
    return lhs, rhs
