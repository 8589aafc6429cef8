"""Window magnifications of the touching-pieces attractor and their limits.

The demo system is x/2, x/5 + 1/2, x/7 + 6/7 on [0, 1]: pieces touch, the
open-set condition holds, and magnifying tiny windows centered at 1/2 by
powers of 7 produces, in the limit, the doubled copy (E/2) union (E/2 + 1/2).
The demo reproduces that convergence on exact covers and, in the opposite
direction, certifies for finitely many candidate windows that the doubled
copy is NOT contained in the magnified attractor, each time by exhibiting an
exact rational point of the doubled copy that provably misses the window's
magnified cover.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .geosets import GeoSet, attractor_cover, excludes_point, geo_hausdorff, geo_magnify
from .moran import DEFAULT_NODE_BUDGET, MoranConstruction
from .subshift import full_shift
from .systems import osc_gap_system, unit_interval
from .words import Word

F = Fraction


class PrecisionError(RuntimeError):
    """Interval arithmetic could not certify a rounding decision."""


def _exact_fraction(x) -> F:
    """Exact rational value of an mpf (every mpf is mantissa * 2^exponent)."""
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    man, exp = int(man), int(exp)
    if man == 0:
        return F(0)
    val = F(man) * F(2) ** exp
    return -val if sign else val


def furstenberg_sequence(j: int, max_m: int = 10000, start_prec: int = 80) -> tuple[int, int]:
    """Smallest m whose magnification defect beats 1/j, with its pairing n.

    Searches upward for the least m such that the fractional part of
    1 + m*log2(7) - log2(5) is below 1/j; n is the integer part.  Floor and
    comparison decisions use certified interval enclosures whose rational
    endpoints are compared exactly; the precision escalates whenever an
    enclosure straddles a decision boundary.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    iv = mpmath.iv
    saved = iv.prec
    target = F(1, j)
    prec = start_prec
    try:
        while prec <= 4096:
            iv.prec = prec
            log27 = iv.log(7) / iv.log(2)
            log25 = iv.log(5) / iv.log(2)
            undecided = False
            for m in range(1, max_m + 1):
                theta = 1 + m * log27 - log25
                lo = _exact_fraction(theta.a)
                hi = _exact_fraction(theta.b)
                n_lo, n_hi = lo.__floor__(), hi.__floor__()
                if n_lo != n_hi:
                    undecided = True
                    break
                n = n_lo
                if hi - n < target:
                    return m, n
                if lo - n >= target:
                    continue
                undecided = True
                break
            if not undecided:
                raise PrecisionError(f"no admissible m below {max_m} for j={j}")
            prec *= 2
    finally:
        iv.prec = saved
    raise PrecisionError("precision escalation exhausted while certifying the scan")


def window_for(m: int) -> tuple[F, F]:
    """The magnification window [1/2 - (1/7)^m / 2, 1/2 + (1/7)^m / 2]."""
    half = F(1, 2) * F(1, 7) ** m
    return (F(1, 2) - half, F(1, 2) + half)


def scale_sandwich(j: int, m: int, n: int) -> tuple[bool, bool, F]:
    """Exact checks that the right piece magnifies to between 1/2 and 2^(1/j)/2.

    The magnified right-piece diameter is 7^m / (5 * 2^n); the upper comparison
    against 2^(1/j)/2 is decided by raising both sides to the j-th power, so
    everything stays in integers: (2*scaled)^j <= 2 iff (2*num)^j <= 2*den^j.
    """
    scaled = F(7**m, 5 * 2**n)
    lower_ok = F(1, 2) <= scaled
    upper_ok = (2 * scaled.numerator) ** j <= 2 * scaled.denominator**j
    return lower_ok, upper_ok, scaled


@dataclass(frozen=True)
class WindowCertificate:
    """An exact point of the doubled copy missing a magnified window cover.

    ``witness`` lies in (E/2) union (E/2 + 1/2) by construction: it is
    half of an attractor anchor point, shifted into the right copy when
    ``copy`` is "right".  The verdict is rigorous: the witness avoids the
    closed cover of the magnified window at the stated floor, and the cover
    contains the true magnified set.
    """

    u: F
    v: F
    witness: F
    anchor_word: Word
    anchor_endpoint: int  # 0 or 1
    copy: str  # "left" or "right"
    floor: F
    certified: bool


@dataclass(frozen=True)
class DemoRow:
    j: int
    m: int
    n: int
    u: F
    v: F
    distance: F
    sandwich_lower_ok: bool
    sandwich_upper_ok: bool
    left_scale_exact_half: bool


@dataclass(frozen=True)
class FurstenbergDemo:
    level1_gap: tuple[F, F]
    eta: F
    resolution: F
    rows: tuple[DemoRow, ...]
    certificates: tuple[WindowCertificate, ...]
    undecided: tuple[tuple[F, F], ...]
    anchor_len: int
    n_candidate_windows: int


def demo_construction() -> MoranConstruction:
    return MoranConstruction(osc_gap_system(), full_shift(3), unit_interval())


def _anchor_points(mc: MoranConstruction, max_len: int):
    """Exact attractor points phi_w(0) and phi_w(1) with their realizing words.

    Trailing symbols fixing the endpoint are stripped (symbol 1 fixes 0,
    symbol 3 fixes 1), so each listed value appears once.
    """
    out = {}
    system = mc.system
    stack = [((), None)]
    while stack:
        symbols, m = stack.pop()
        for endpoint in (0, 1):
            if symbols and symbols[-1] == (1 if endpoint == 0 else 3):
                continue
            val = F(endpoint) if m is None else m.apply(F(endpoint))
            if val not in out:
                out[val] = (symbols, endpoint)
        if len(symbols) < max_len:
            for s in range(3, 0, -1):
                child = m.compose(system.map_for(s)) if m else system.map_for(s)
                stack.append((symbols + (s,), child))
    return out


def _witness_pool(mc: MoranConstruction, max_len: int = 3):
    """Candidate witnesses in the doubled copy, cheap gap-hitters first."""
    anchors = _anchor_points(mc, max_len)
    pool = []
    for val, (word, endpoint) in sorted(anchors.items()):
        pool.append((val / 2, word, endpoint, "left"))
        pool.append((val / 2 + F(1, 2), word, endpoint, "right"))
    # both copies of 1/2 coincide; order the pool so historically good
    # witnesses (images of the midpoint and the gap edges) come first
    def rank(entry):
        w = entry[0]
        preferred = (F(3, 4), F(1, 4), F(7, 20), F(17, 20), F(13, 14), F(3, 7))
        try:
            return (preferred.index(w), w)
        except ValueError:
            return (len(preferred), w)

    pool.sort(key=rank)
    seen = set()
    unique = []
    for entry in pool:
        if entry[0] not in seen:
            seen.add(entry[0])
            unique.append(entry)
    return unique


def candidate_windows(mc: MoranConstruction, anchor_len: int, cross_len: int = 2):
    """Windows (u, v) with attractor-anchored rational endpoints.

    The family pairs the two endpoint images of every word up to
    ``anchor_len`` (the window spanning that piece) and adds all cross pairs
    of anchors up to ``cross_len``.
    """
    system = mc.system
    windows = []
    stack = [((), None)]
    while stack:
        symbols, m = stack.pop()
        u = F(0) if m is None else m.apply(F(0))
        v = F(1) if m is None else m.apply(F(1))
        windows.append((u, v))
        if len(symbols) < anchor_len:
            for s in range(3, 0, -1):
                child = m.compose(system.map_for(s)) if m else system.map_for(s)
                stack.append((symbols + (s,), child))
    anchors = sorted(_anchor_points(mc, cross_len))
    for u in anchors:
        for v in anchors:
            if u < v:
                windows.append((u, v))
    ordered = sorted(set(windows))
    return ordered


def certify_window(
    mc: MoranConstruction,
    u: F,
    v: F,
    witnesses,
    rel_floor: F = F(1, 4096),
    budget: int = DEFAULT_NODE_BUDGET,
) -> WindowCertificate | None:
    """Search the witness pool for a point of the doubled copy missing the window.

    A witness k certifies the window when its preimage u + k (v - u) provably
    misses the attractor: the magnified cover then misses k as well.
    """
    span = v - u
    floor = rel_floor * span
    for k, word, endpoint, copy in witnesses:
        p = u + k * span
        if excludes_point(mc, p, floor, budget=budget):
            return WindowCertificate(
                u=u,
                v=v,
                witness=k,
                anchor_word=Word(word, mc.system.kappa),
                anchor_endpoint=endpoint,
                copy=copy,
                floor=floor,
                certified=True,
            )
    return None


def verify_certificate(mc: MoranConstruction, cert: WindowCertificate) -> bool:
    """Independent re-check of a certificate from its stored ingredients."""
    anchor = mc.system.compose(cert.anchor_word).apply(F(cert.anchor_endpoint)) if len(
        cert.anchor_word
    ) else F(cert.anchor_endpoint)
    expected = anchor / 2 + (F(1, 2) if cert.copy == "right" else F(0))
    if expected != cert.witness:
        return False
    if not 0 <= cert.witness <= 1:
        return False
    p = cert.u + cert.witness * (cert.v - cert.u)
    return excludes_point(mc, p, cert.floor)


def furstenberg_demo(
    depth: int = 14,
    j_max: int = 5,
    anchor_len: int = 6,
    cross_len: int = 2,
    budget: int = DEFAULT_NODE_BUDGET,
) -> FurstenbergDemo:
    """Convergence table plus non-containment certificates for the demo system.

    ``depth`` fixes the cover resolution 2^-depth (the accuracy a level-depth
    construction would give); windows get local covers at matching relative
    resolution, so deep windows stay cheap.
    """
    if depth < 8:
        raise ValueError("depth must be >= 8")
    if j_max < 3:
        raise ValueError("j_max must be >= 3")
    mc = demo_construction()
    resolution = F(1, 2**depth)

    level1 = GeoSet(
        [(mc.system.map_for(s).apply(F(0)), mc.system.map_for(s).apply(F(1))) for s in (1, 2, 3)]
    )
    gaps = level1.gaps(F(0), F(1))
    level1_gap = gaps[0] if gaps else None
    eta = level1_gap[1] - level1_gap[0] if level1_gap else F(0)

    cover = attractor_cover(mc, resolution, budget=budget)
    k_set = cover.affine(F(1, 2), F(0)).union(cover.affine(F(1, 2), F(1, 2)))

    rows = []
    for j in range(1, j_max + 1):
        m, n = furstenberg_sequence(j)
        u, v = window_for(m)
        local = attractor_cover(mc, resolution * (v - u), window=(u, v), budget=budget)
        magnified = geo_magnify(local, u, v)
        dist = geo_hausdorff(magnified, k_set)
        lower_ok, upper_ok, scaled = scale_sandwich(j, m, n)
        left_exact = (F(7) ** m) * F(1, 2) * F(1, 7) ** m == F(1, 2)
        rows.append(
            DemoRow(
                j=j,
                m=m,
                n=n,
                u=u,
                v=v,
                distance=dist,
                sandwich_lower_ok=lower_ok,
                sandwich_upper_ok=upper_ok,
                left_scale_exact_half=left_exact,
            )
        )

    witnesses = _witness_pool(mc)
    certificates = []
    undecided = []
    windows = candidate_windows(mc, anchor_len, cross_len)
    for u, v in windows:
        cert = certify_window(mc, u, v, witnesses, budget=budget)
        if cert is None:
            undecided.append((u, v))
        else:
            certificates.append(cert)

    return FurstenbergDemo(
        level1_gap=level1_gap,
        eta=eta,
        resolution=resolution,
        rows=tuple(rows),
        certificates=tuple(certificates),
        undecided=tuple(undecided),
        anchor_len=anchor_len,
        n_candidate_windows=len(windows),
    )
