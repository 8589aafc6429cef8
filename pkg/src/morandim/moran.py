"""Seed sets, iterated function systems, and the induced nested-set geometry.

All set predicates (containment, diameter comparisons, ball intersection)
are decided in exact rational arithmetic.  In the plane, diameters are
irrational square roots, so they are carried as exact squared rationals and
every comparison is performed on squares.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .maps import ContractionMap, DiagonalAffine2D, Homothety1D, compose_word
from .subshift import Subshift, full_shift
from .words import Word

DEFAULT_NODE_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """An enumeration outgrew its node budget; carries whatever was finished."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class Diameter:
    """A nonnegative length carried by its exact square.

    ``exact`` is set when the value itself is rational (always in 1D).
    Comparisons against rationals and other diameters are exact.
    """

    __slots__ = ("sq", "exact")

    def __init__(self, sq: Fraction, exact: Fraction | None = None):
        self.sq = Fraction(sq)
        if self.sq < 0:
            raise ValueError("squared length cannot be negative")
        self.exact = Fraction(exact) if exact is not None else None

    @classmethod
    def from_value(cls, value) -> "Diameter":
        v = Fraction(value)
        return cls(v * v, v)

    def __float__(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return math.sqrt(float(self.sq))

    def mpf(self, prec: int = 113) -> mpmath.mpf:
        with mpmath.workprec(prec):
            if self.exact is not None:
                return mpmath.mpf(self.exact.numerator) / self.exact.denominator
            return mpmath.sqrt(mpmath.mpf(self.sq.numerator) / self.sq.denominator)

    def log(self, prec: int = 113) -> mpmath.mpf:
        with mpmath.workprec(prec):
            return mpmath.log(self.sq.numerator / mpmath.mpf(self.sq.denominator)) / 2

    def __mul__(self, other) -> "Diameter":
        if isinstance(other, Diameter):
            exact = None
            if self.exact is not None and other.exact is not None:
                exact = self.exact * other.exact
            return Diameter(self.sq * other.sq, exact)
        f = Fraction(other)
        if f < 0:
            raise ValueError("cannot scale a length by a negative factor")
        return Diameter(self.sq * f * f, None if self.exact is None else self.exact * f)

    __rmul__ = __mul__

    def _cmp_sq(self, other) -> Fraction:
        if isinstance(other, Diameter):
            return other.sq
        f = Fraction(other)
        if f < 0:
            raise ValueError("comparisons are defined against nonnegative values")
        return f * f

    def __le__(self, other):
        return self.sq <= self._cmp_sq(other)

    def __lt__(self, other):
        return self.sq < self._cmp_sq(other)

    def __ge__(self, other):
        return self.sq >= self._cmp_sq(other)

    def __gt__(self, other):
        return self.sq > self._cmp_sq(other)

    def __eq__(self, other):
        try:
            return self.sq == self._cmp_sq(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.sq)

    def __repr__(self):
        if self.exact is not None:
            return f"Diameter({self.exact})"
        return f"Diameter(sqrt({self.sq}))"


@dataclass(frozen=True)
class SeedInterval:
    """Closed interval [lo, hi] with rational endpoints and positive length."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.hi <= self.lo:
            raise ValueError("seed interval must have positive diameter")

    dimension = 1

    def diameter(self) -> Diameter:
        return Diameter.from_value(self.hi - self.lo)

    def image(self, m: Homothety1D) -> "SeedInterval":
        return SeedInterval(m.apply(self.lo), m.apply(self.hi))

    def contains(self, other: "SeedInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def meets_ball(self, x: Fraction, r: Fraction) -> bool:
        return self.lo <= x + r and x - r <= self.hi

    def contained_in_ball(self, x: Fraction, r: Fraction) -> bool:
        return x - r <= self.lo and self.hi <= x + r


@dataclass(frozen=True)
class SeedRect:
    """Closed axis-aligned rectangle with rational corners and positive diameter."""

    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def __post_init__(self):
        for name in ("x0", "x1", "y0", "y1"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.x1 < self.x0 or self.y1 < self.y0 or (self.x1 == self.x0 and self.y1 == self.y0):
            raise ValueError("seed rectangle must have positive diameter")

    dimension = 2

    def diameter(self) -> Diameter:
        w = self.x1 - self.x0
        h = self.y1 - self.y0
        return Diameter(w * w + h * h)

    def image(self, m: DiagonalAffine2D) -> "SeedRect":
        return SeedRect(
            m.r * self.x0 + m.a,
            m.r * self.x1 + m.a,
            m.s * self.y0 + m.b,
            m.s * self.y1 + m.b,
        )

    def contains(self, other: "SeedRect") -> bool:
        return (
            self.x0 <= other.x0
            and other.x1 <= self.x1
            and self.y0 <= other.y0
            and other.y1 <= self.y1
        )

    def midpoint(self) -> tuple[Fraction, Fraction]:
        return ((self.x0 + self.x1) / 2, (self.y0 + self.y1) / 2)

    def _dist_sq(self, point) -> Fraction:
        x, y = point
        dx = max(Fraction(0), self.x0 - x, x - self.x1)
        dy = max(Fraction(0), self.y0 - y, y - self.y1)
        return dx * dx + dy * dy

    def meets_ball(self, point, r: Fraction) -> bool:
        return self._dist_sq(point) <= r * r

    def contained_in_ball(self, point, r: Fraction) -> bool:
        x, y = point
        dx = max(x - self.x0, self.x1 - x)
        dy = max(y - self.y0, self.y1 - y)
        return dx * dx + dy * dy <= r * r


SeedSet = SeedInterval | SeedRect


@dataclass(frozen=True)
class IfsSystem:
    """An ordered tuple of contraction maps of one variant; index = symbol."""

    maps: tuple[ContractionMap, ...]

    def __post_init__(self):
        if len(self.maps) < 2:
            raise ValueError("an iterated function system needs at least two maps")
        kinds = {type(m) for m in self.maps}
        if len(kinds) != 1:
            raise ValueError("all maps must be of the same variant")
        if len({m.fixed_point() for m in self.maps}) < 2:
            raise ValueError("at least two maps must have distinct fixed points")

    @property
    def kappa(self) -> int:
        return len(self.maps)

    @property
    def dimension(self) -> int:
        return self.maps[0].dimension

    def map_for(self, symbol: int) -> ContractionMap:
        if not 1 <= symbol <= self.kappa:
            raise ValueError(f"symbol {symbol} outside 1..{self.kappa}")
        return self.maps[symbol - 1]

    def compose(self, word) -> ContractionMap:
        return compose_word(self.maps, word)

    def max_ratio(self) -> Fraction:
        return max(m.lipschitz for m in self.maps)

    def min_ratio(self) -> Fraction:
        if self.dimension == 1:
            return min(m.r for m in self.maps)
        return min(min(m.r, m.s) for m in self.maps)

    def ratios(self) -> tuple[Fraction, ...]:
        if self.dimension != 1:
            raise ValueError("per-symbol similarity ratios exist only in 1D here")
        return tuple(m.r for m in self.maps)

    def canonical_seed(self) -> SeedSet:
        """The ball-intersection seed from the fixed points, as a rational box.

        In 1D this is the exact interval [max z - R, min z + R] with
        R = lambda / (1 - alpha).  In 2D the same construction is carried out
        in the sup metric (the maps contract it with the same constant), which
        turns the ball intersection into an exact rational box.
        """
        alpha = self.max_ratio()
        if self.dimension == 1:
            zs = [m.fixed_point() for m in self.maps]
            lam = max(zs) - min(zs)
            radius = lam / (1 - alpha)
            return SeedInterval(max(zs) - radius, min(zs) + radius)
        pts = [m.fixed_point() for m in self.maps]
        lam = max(
            max(abs(p[0] - q[0]), abs(p[1] - q[1])) for p in pts for q in pts
        )
        radius = lam / (1 - alpha)
        return SeedRect(
            max(p[0] for p in pts) - radius,
            min(p[0] for p in pts) + radius,
            max(p[1] for p in pts) - radius,
            min(p[1] for p in pts) + radius,
        )


def seed_set(system: IfsSystem, override: SeedSet | None = None) -> SeedSet:
    """Canonical seed of the system, or a caller-supplied forward-invariant one."""
    seed = override if override is not None else system.canonical_seed()
    if seed.dimension != system.dimension:
        raise ValueError("seed dimension does not match the system")
    for k, m in enumerate(system.maps, start=1):
        if not seed.contains(seed.image(m)):
            raise ValueError(f"seed is not forward invariant under map {k}")
    return seed


@dataclass(frozen=True)
class MoranConstruction:
    """The nested sets E_w = phi_w(W) indexed by the allowed words of a subshift."""

    system: IfsSystem
    subshift: Subshift
    seed: SeedSet = None

    def __post_init__(self):
        if self.subshift.kappa != self.system.kappa:
            raise ValueError("subshift alphabet does not match the number of maps")
        object.__setattr__(self, "seed", seed_set(self.system, self.seed))

    @classmethod
    def full(cls, system: IfsSystem, seed: SeedSet | None = None) -> "MoranConstruction":
        return cls(system, full_shift(system.kappa), seed)

    # -- basic geometry ---------------------------------------------------

    def set_for(self, word) -> SeedSet:
        symbols = tuple(word.symbols) if isinstance(word, Word) else tuple(word)
        if not symbols:
            return self.seed
        if not self.subshift.contains(symbols):
            raise ValueError(f"word {symbols} is not allowed by the subshift")
        return self.seed.image(self.system.compose(symbols))

    def diameter(self, word) -> Diameter:
        symbols = tuple(word.symbols) if isinstance(word, Word) else tuple(word)
        if not symbols:
            return self.seed.diameter()
        if not self.subshift.contains(symbols):
            raise ValueError(f"word {symbols} is not allowed by the subshift")
        m = self.system.compose(symbols)
        return self._map_diameter(m)

    def _map_diameter(self, m: ContractionMap) -> Diameter:
        if self.system.dimension == 1:
            return Diameter.from_value(m.r * (self.seed.hi - self.seed.lo))
        w = self.seed.x1 - self.seed.x0
        h = self.seed.y1 - self.seed.y0
        return Diameter(m.r * m.r * w * w + m.s * m.s * h * h)

    def word(self, symbols) -> Word:
        return Word(tuple(symbols), self.system.kappa)

    # -- stopping sets and clusters ---------------------------------------

    def stopping_set(self, r, budget: int = DEFAULT_NODE_BUDGET) -> list[Word]:
        """The maximal antichain of allowed words whose set diameter first drops to <= r.

        For r at or above the seed diameter the whole first level already
        qualifies and is returned, keeping the antichain-and-cover property
        for every positive radius.
        """
        r = Fraction(r)
        if r <= 0:
            raise ValueError("radius must be positive")
        out: list[tuple[int, ...]] = []
        visited = 0
        stack = []
        for s in range(self.subshift.kappa, 0, -1):
            state = self.subshift.transitions[0][s]
            if state is not None:
                stack.append(((s,), state, self.system.map_for(s)))
        while stack:
            symbols, state, m = stack.pop()
            visited += 1
            if visited > budget:
                raise BudgetExceededError(
                    f"stopping set at r={r} exceeded {budget} nodes", partial=out
                )
            if self._map_diameter(m) <= r:
                out.append(symbols)
                continue
            for s in range(self.subshift.kappa, 0, -1):
                nxt = self.subshift.transitions[state][s]
                if nxt is not None:
                    stack.append((symbols + (s,), nxt, m.compose(self.system.map_for(s))))
        out.sort()
        return [Word(t, self.subshift.kappa) for t in out]

    def local_cluster(self, x, r, budget: int = DEFAULT_NODE_BUDGET) -> list[Word]:
        """Stopping-set words whose sets meet the closed ball B(x, r); exact tests.

        The descent prunes any subtree whose set already misses the ball, so
        the cost scales with the cluster, not with the whole stopping set.
        All tests run on raw rationals to keep the inner loop lean.
        """
        r = Fraction(r)
        if r <= 0:
            raise ValueError("radius must be positive")
        x = self._check_point(x)
        if self.system.dimension == 1:
            out = self._descend_1d(x, r, budget)
        else:
            out = self._descend_2d(x, r, budget)
        out.sort()
        return [Word(t, self.subshift.kappa) for t in out]

    def _descend_1d(self, x, r, budget):
        lo0, hi0 = self.seed.lo, self.seed.hi
        width = hi0 - lo0
        trans = self.subshift.transitions
        kappa = self.subshift.kappa
        params = [(m.r, m.a) for m in self.system.maps]
        ball_lo, ball_hi = x - r, x + r
        out = []
        visited = 0
        stack = []
        for s in range(kappa, 0, -1):
            st = trans[0][s]
            if st is not None:
                mr, ma = params[s - 1]
                stack.append(((s,), st, mr, ma))
        while stack:
            symbols, state, mr, ma = stack.pop()
            visited += 1
            if visited > budget:
                raise BudgetExceededError(f"cluster at r={r} exceeded {budget} nodes", partial=out)
            lo = mr * lo0 + ma
            if lo > ball_hi or mr * hi0 + ma < ball_lo:
                continue
            if mr * width <= r:
                out.append(symbols)
                continue
            for s in range(kappa, 0, -1):
                nxt = trans[state][s]
                if nxt is not None:
                    cr, ca = params[s - 1]
                    stack.append((symbols + (s,), nxt, mr * cr, mr * ca + ma))
        return out

    def _descend_2d(self, x, r, budget):
        x0, x1, y0, y1 = self.seed.x0, self.seed.x1, self.seed.y0, self.seed.y1
        wsq = (x1 - x0) ** 2
        hsq = (y1 - y0) ** 2
        px, py = x
        rsq = r * r
        zero = Fraction(0)
        trans = self.subshift.transitions
        kappa = self.subshift.kappa
        params = [(m.r, m.s, m.a, m.b) for m in self.system.maps]
        out = []
        visited = 0
        stack = []
        for s in range(kappa, 0, -1):
            st = trans[0][s]
            if st is not None:
                stack.append(((s,), st) + params[s - 1])
        while stack:
            symbols, state, mr, ms, ma, mb = stack.pop()
            visited += 1
            if visited > budget:
                raise BudgetExceededError(f"cluster at r={r} exceeded {budget} nodes", partial=out)
            dx = max(zero, mr * x0 + ma - px, px - mr * x1 - ma)
            dy = max(zero, ms * y0 + mb - py, py - ms * y1 - mb)
            if dx * dx + dy * dy > rsq:
                continue
            if mr * mr * wsq + ms * ms * hsq <= rsq:
                out.append(symbols)
                continue
            for s in range(kappa, 0, -1):
                nxt = trans[state][s]
                if nxt is not None:
                    cr, cs, ca, cb = params[s - 1]
                    stack.append(
                        (symbols + (s,), nxt, mr * cr, ms * cs, mr * ca + ma, ms * cb + mb)
                    )
        return out

    def _check_point(self, x):
        if self.system.dimension == 1:
            return Fraction(x)
        if not isinstance(x, (tuple, list)) or len(x) != 2:
            raise ValueError("a planar construction needs a 2D point")
        return (Fraction(x[0]), Fraction(x[1]))

    # -- axiom verification ------------------------------------------------

    def verify_axioms(self, depth: int, pair_cap: int = 400) -> "MoranReport":
        """Exact nesting, bounded-composition, and decay checks to a finite depth."""
        if depth < 1:
            raise ValueError("depth must be >= 1")
        violations: list[str] = []
        seed_diam = self.seed.diameter()
        alpha_hi = self.system.max_ratio()
        alpha_lo = self.system.min_ratio()

        # nesting: E_{w s} inside E_w for every allowed word up to depth
        level = [((), None, 0)]
        max_diams: list[Diameter] = []
        for n in range(1, depth + 1):
            nxt = []
            level_max: Diameter | None = None
            for symbols, m, state in level:
                box = self.seed if m is None else self.seed.image(m)
                for s in range(1, self.subshift.kappa + 1):
                    child_state = self.subshift.transitions[state][s]
                    if child_state is None:
                        continue
                    child = m.compose(self.system.map_for(s)) if m else self.system.map_for(s)
                    cbox = self.seed.image(child)
                    if not box.contains(cbox):
                        violations.append(f"nesting fails at word {symbols + (s,)}")
                    d = self._map_diameter(child)
                    parent_diam = seed_diam if m is None else self._map_diameter(m)
                    if d < alpha_lo * parent_diam:
                        violations.append(f"lower ratio bound fails at word {symbols + (s,)}")
                    if level_max is None or d > level_max:
                        level_max = d
                    nxt.append((symbols + (s,), child, child_state))
            level = nxt
            max_diams.append(level_max)

        decay_ok = all(
            d <= (alpha_hi**n) * seed_diam for n, d in enumerate(max_diams, start=1) if d
        )
        if not decay_ok:
            violations.append("decay bound max diam <= diam(W) * alpha^n fails")

        # bounded composition on sampled pairs
        if self.system.dimension == 1:
            d_sq = Fraction(1) / (seed_diam.sq)
        else:
            w = self.seed.x1 - self.seed.x0
            h = self.seed.y1 - self.seed.y0
            side = min(v for v in (w, h) if v > 0)
            d_sq = Fraction(1) / (side * side)
        half = max(1, depth // 2)
        words_half = []
        for t in self.subshift.words(half):
            words_half.append(t)
            if len(words_half) >= pair_cap:
                break
        multiplicative = True
        for i_sym in words_half[: pair_cap // 10 + 1]:
            for j_sym in words_half[: pair_cap // 10 + 1]:
                if self.subshift.state_after(i_sym + j_sym) is None:
                    continue
                dij = self.diameter(i_sym + j_sym)
                di = self.diameter(i_sym)
                dj = self.diameter(j_sym)
                if dij.sq > d_sq * di.sq * dj.sq:
                    violations.append(f"composition bound fails at pair {i_sym}|{j_sym}")
                if dij.sq * seed_diam.sq != di.sq * dj.sq:
                    multiplicative = False
        if self.system.dimension == 2:
            multiplicative = None

        return MoranReport(
            ok=not violations,
            depth=depth,
            violations=tuple(violations),
            alpha_lower=alpha_lo,
            alpha_upper=alpha_hi,
            d_constant_sq=d_sq,
            decay_ok=decay_ok,
            similarity_multiplicative=multiplicative,
        )


@dataclass(frozen=True)
class MoranReport:
    ok: bool
    depth: int
    violations: tuple[str, ...]
    alpha_lower: Fraction
    alpha_upper: Fraction
    d_constant_sq: Fraction
    decay_ok: bool
    similarity_multiplicative: bool | None = None
