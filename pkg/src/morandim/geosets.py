"""Exact finite interval unions and the window-magnification machinery.

Everything here is one-dimensional and rational: attractors are approximated
by stopping-set covers (unions of closed intervals that contain the limit set
and lie within the requested resolution of it), magnified windows stay exact,
and Hausdorff distances between covers are computed as exact rationals.
"""

import bisect
from fractions import Fraction

from .moran import DEFAULT_NODE_BUDGET, BudgetExceededError, MoranConstruction

F = Fraction
_TWO = F(2)


class GeoSet:
    """A finite union of closed intervals in [0, 1], normalized and exact.

    Touching or overlapping intervals are merged, so the stored intervals are
    pairwise disjoint and sorted.  Degenerate point intervals are allowed.
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals):
        rows = []
        for lo, hi in intervals:
            lo, hi = F(lo), F(hi)
            if hi < lo:
                raise ValueError(f"interval [{lo}, {hi}] is reversed")
            if lo < 0 or hi > 1:
                raise ValueError(f"interval [{lo}, {hi}] leaves [0, 1]")
            rows.append((lo, hi))
        rows.sort()
        merged: list[tuple[F, F]] = []
        for lo, hi in rows:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        self.intervals = tuple(merged)

    @classmethod
    def point(cls, x) -> "GeoSet":
        return cls([(x, x)])

    @classmethod
    def whole(cls) -> "GeoSet":
        return cls([(0, 1)])

    def __eq__(self, other):
        return isinstance(other, GeoSet) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        return f"GeoSet({len(self.intervals)} intervals)"

    def __bool__(self):
        return bool(self.intervals)

    @property
    def inf(self) -> F:
        if not self.intervals:
            raise ValueError("empty set has no infimum")
        return self.intervals[0][0]

    @property
    def sup(self) -> F:
        if not self.intervals:
            raise ValueError("empty set has no supremum")
        return self.intervals[-1][1]

    def measure(self) -> F:
        return sum((hi - lo for lo, hi in self.intervals), F(0))

    def contains_point(self, x) -> bool:
        x = F(x)
        k = bisect.bisect_right(self.intervals, (x, _TWO)) - 1
        return k >= 0 and self.intervals[k][0] <= x <= self.intervals[k][1]

    def distance_to_point(self, x) -> F:
        """Exact distance from x to the set; binary search on the sorted intervals."""
        if not self.intervals:
            raise ValueError("distance to the empty set is undefined")
        x = F(x)
        k = bisect.bisect_right(self.intervals, (x, _TWO))
        best = None
        if k > 0:
            lo, hi = self.intervals[k - 1]
            if x <= hi:
                return F(0)
            best = x - hi
        if k < len(self.intervals):
            d = self.intervals[k][0] - x
            if best is None or d < best:
                best = d
        return best

    def union(self, other: "GeoSet") -> "GeoSet":
        return GeoSet(self.intervals + other.intervals)

    def intersect_window(self, u, v) -> "GeoSet":
        u, v = F(u), F(v)
        rows = []
        for lo, hi in self.intervals:
            a, b = max(lo, u), min(hi, v)
            if a <= b:
                rows.append((a, b))
        return GeoSet(rows)

    def affine(self, scale, offset) -> "GeoSet":
        """Exact image x -> scale*x + offset, clipped to [0, 1]."""
        scale, offset = F(scale), F(offset)
        if scale <= 0:
            raise ValueError("only positive scalings are supported")
        rows = []
        for lo, hi in self.intervals:
            a, b = scale * lo + offset, scale * hi + offset
            a2, b2 = max(a, F(0)), min(b, F(1))
            if a2 <= b2:
                rows.append((a2, b2))
        return GeoSet(rows)

    def subset_of(self, other: "GeoSet") -> bool:
        j = 0
        for lo, hi in self.intervals:
            while j < len(other.intervals) and other.intervals[j][1] < lo:
                j += 1
            if j >= len(other.intervals):
                return False
            olo, ohi = other.intervals[j]
            if not (olo <= lo and hi <= ohi):
                return False
        return True

    def gaps(self, lo=None, hi=None) -> tuple[tuple[F, F], ...]:
        """Maximal open intervals of the complement inside [lo, hi]."""
        lo = self.inf if lo is None else F(lo)
        hi = self.sup if hi is None else F(hi)
        out = []
        cursor = lo
        for a, b in self.intervals:
            if b < lo:
                continue
            if a > hi:
                break
            if a > cursor:
                out.append((cursor, min(a, hi)))
            cursor = max(cursor, b)
            if cursor >= hi:
                break
        if cursor < hi:
            out.append((cursor, hi))
        return tuple(p for p in out if p[0] < p[1])


def geo_magnify(a: GeoSet, u, v) -> GeoSet:
    """Exact image of a window under the magnification sending [u, v] to [0, 1]."""
    u, v = F(u), F(v)
    if not 0 <= u < v <= 1:
        raise ValueError("need 0 <= u < v <= 1")
    scale = 1 / (v - u)
    return a.intersect_window(u, v).affine(scale, -u * scale)


def geo_hausdorff(a: GeoSet, b: GeoSet) -> F:
    """Exact Hausdorff distance between nonempty finite interval unions.

    The distance function to an interval union is piecewise linear, so the
    one-sided sup is attained at interval endpoints or at complement-gap
    midpoints of the other set; all candidates are enumerated exactly.
    """
    if not a or not b:
        raise ValueError("Hausdorff distance needs nonempty sets")

    def one_sided(src: GeoSet, dst: GeoSet) -> F:
        candidates = []
        for lo, hi in src.intervals:
            candidates.append(lo)
            candidates.append(hi)
        ivs = dst.intervals
        for k in range(len(ivs) - 1):
            mid = (ivs[k][1] + ivs[k + 1][0]) / 2
            if src.contains_point(mid):
                candidates.append(mid)
        # points of src beyond dst's hull
        best = F(0)
        for x in candidates:
            d = dst.distance_to_point(x)
            if d > best:
                best = d
        return best

    return max(one_sided(a, b), one_sided(b, a))


def attractor_cover(
    mc: MoranConstruction,
    resolution,
    window: tuple | None = None,
    budget: int = DEFAULT_NODE_BUDGET,
) -> GeoSet:
    """Union of the stopping-set interval images at the given resolution.

    The result contains the limit set and every point of it is within
    ``resolution`` of the limit set.  With ``window=(u, v)`` only pieces
    meeting the window are collected, which keeps deep local covers cheap.
    """
    if mc.system.dimension != 1:
        raise ValueError("interval covers are one-dimensional")
    resolution = F(resolution)
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    lo0, hi0 = mc.seed.lo, mc.seed.hi
    width = hi0 - lo0
    wlo, whi = (None, None) if window is None else (F(window[0]), F(window[1]))
    trans = mc.subshift.transitions
    kappa = mc.subshift.kappa
    params = [(m.r, m.a) for m in mc.system.maps]
    rows = []
    visited = 0
    stack = []
    for s in range(kappa, 0, -1):
        st = trans[0][s]
        if st is not None:
            mr, ma = params[s - 1]
            stack.append((st, mr, ma))
    while stack:
        state, mr, ma = stack.pop()
        visited += 1
        if visited > budget:
            raise BudgetExceededError(f"cover at resolution {resolution} exceeded {budget} nodes")
        lo = mr * lo0 + ma
        hi = mr * hi0 + ma
        if window is not None and (lo > whi or hi < wlo):
            continue
        if mr * width <= resolution:
            rows.append((lo, hi))
            continue
        for s in range(kappa, 0, -1):
            nxt = trans[state][s]
            if nxt is not None:
                cr, ca = params[s - 1]
                stack.append((nxt, mr * cr, mr * ca + ma))
    return GeoSet(rows)


def excludes_point(
    mc: MoranConstruction,
    p,
    floor,
    budget: int = DEFAULT_NODE_BUDGET,
) -> bool:
    """Certify that p is not in the limit set by descending the covering pieces.

    Returns True when no piece of diameter >= ``floor`` contains p (then p is
    outside the closed cover, hence outside the limit set).  Returns False
    when p is still covered at the floor resolution; that is inconclusive.
    """
    if mc.system.dimension != 1:
        raise ValueError("point exclusion is one-dimensional")
    p = F(p)
    floor = F(floor)
    if floor <= 0:
        raise ValueError("floor must be positive")
    lo0, hi0 = mc.seed.lo, mc.seed.hi
    width = hi0 - lo0
    if not lo0 <= p <= hi0:
        return True
    trans = mc.subshift.transitions
    kappa = mc.subshift.kappa
    params = [(m.r, m.a) for m in mc.system.maps]
    stack = []
    visited = 0
    for s in range(kappa, 0, -1):
        st = trans[0][s]
        if st is not None:
            mr, ma = params[s - 1]
            stack.append((st, mr, ma))
    while stack:
        state, mr, ma = stack.pop()
        visited += 1
        if visited > budget:
            raise BudgetExceededError("point exclusion exceeded its node budget")
        if mr * lo0 + ma > p or mr * hi0 + ma < p:
            continue
        if mr * width <= floor:
            return False  # still covered at the floor; cannot certify
        for s in range(kappa, 0, -1):
            nxt = trans[state][s]
            if nxt is not None:
                cr, ca = params[s - 1]
                stack.append((nxt, mr * cr, mr * ca + ma))
    return True
