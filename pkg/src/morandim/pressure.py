"""Topological pressure of a Moran construction and its zero.

Set enumeration stays exact; only logarithms and powers go through mpmath
at a configurable working precision.  For weighted subshifts of similarity
systems the pressure is evaluated spectrally: per strongly connected
component of the live follower automaton, the Perron root of the weighted
transition operator is bracketed by Collatz-Wielandt quotients of a shifted
power iteration, and the pressure is the log of the largest root.  The zero
is then found by plain bisection, which is certified because the pressure is
strictly decreasing.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .moran import DEFAULT_NODE_BUDGET, BudgetExceededError, MoranConstruction
from .subshift import Subshift, strongly_connected_components

DEFAULT_PRECISION = 113


class NonConvergenceError(RuntimeError):
    """A numeric iteration ran out of its iteration budget."""


def _to_mpf(q) -> mpmath.mpf:
    f = Fraction(q)
    return mpmath.mpf(f.numerator) / f.denominator


def pressure_at(
    mc: MoranConstruction,
    t,
    n: int,
    prec: int = DEFAULT_PRECISION,
    budget: int = DEFAULT_NODE_BUDGET,
) -> mpmath.mpf:
    """Finite-level pressure (1/n) log sum over level-n words of diam(E_w)^t.

    Words are enumerated exactly; the sum is accumulated in lex order at the
    working precision, so results are reproducible for a fixed precision.
    """
    if n < 1:
        raise ValueError("level must be >= 1")
    with mpmath.workprec(prec):
        t = mpmath.mpf(t)
        total = mpmath.mpf(0)
        count = 0
        for symbols in mc.subshift.words(n):
            count += 1
            if count > budget:
                raise BudgetExceededError(f"pressure level {n} exceeded {budget} words")
            d = mc.diameter(symbols)
            # diam^t = exp(t/2 * log diam^2): keeps the 2D square exact until here
            total += mpmath.e ** (t / 2 * (mpmath.log(d.sq.numerator) - mpmath.log(d.sq.denominator)))
        if count == 0:
            raise ValueError("no words at this level")
        return mpmath.log(total) / n


def _weighted_matrix(shift: Subshift, ratios, t, prec):
    with mpmath.workprec(prec):
        weights = [None] + [_to_mpf(r) ** t for r in ratios]
        n = shift.n_states
        mat = [[mpmath.mpf(0)] * n for _ in range(n)]
        support = [[0] * n for _ in range(n)]
        for u in range(n):
            for s in range(1, shift.kappa + 1):
                v = shift.transitions[u][s]
                if v is not None:
                    mat[u][v] += weights[s]
                    support[u][v] = 1
        return mat, support


def _perron_root(mat, idx, prec, rel_tol, max_iter=100000) -> mpmath.mpf:
    """Perron root of an irreducible nonnegative submatrix via Collatz-Wielandt.

    Iterates x -> (A + I) x; for irreducible A the shifted matrix is primitive
    and min/max of the quotient vector bracket rho(A) + 1 from below/above.
    """
    with mpmath.workprec(prec):
        k = len(idx)
        if k == 1:
            return mat[idx[0]][idx[0]]
        sub = [[mat[u][v] for v in idx] for u in idx]
        x = [mpmath.mpf(1)] * k
        for _ in range(max_iter):
            y = [sum(sub[i][j] * x[j] for j in range(k)) + x[i] for i in range(k)]
            quots = [y[i] / x[i] for i in range(k)]
            lo, hi = min(quots), max(quots)
            if hi - lo <= rel_tol * lo:
                return (lo + hi) / 2 - 1
            top = max(y)
            x = [v / top for v in y]
        raise NonConvergenceError("Perron iteration did not reach the requested tolerance")


def pressure_spectral(
    shift: Subshift,
    ratios,
    t,
    prec: int = DEFAULT_PRECISION,
    rel_tol=None,
) -> mpmath.mpf:
    """Limit pressure of a weighted subshift: log of the largest Perron root.

    ``ratios`` are the per-symbol contraction ratios; the operator weight of
    symbol s is ratios[s-1]^t.  Reducible automata are handled per strongly
    connected component, taking the maximal root.
    """
    ratios = tuple(Fraction(r) for r in ratios)
    if len(ratios) != shift.kappa:
        raise ValueError("one ratio per symbol is required")
    if any(not 0 < r < 1 for r in ratios):
        raise ValueError("ratios must lie in (0, 1)")
    with mpmath.workprec(prec):
        t = mpmath.mpf(t)
        if rel_tol is None:
            rel_tol = mpmath.mpf(2) ** (10 - prec)
        mat, support = _weighted_matrix(shift, ratios, t, prec)
        best = None
        for comp in strongly_connected_components(support):
            if len(comp) == 1 and not support[comp[0]][comp[0]]:
                continue  # transient singleton, no cycle through it
            rho = _perron_root(mat, comp, prec, rel_tol)
            if best is None or rho > best:
                best = rho
        if best is None:
            # cannot happen for a trimmed automaton: every state lies on a cycle
            raise ValueError("no recurrent component in the automaton")
        return mpmath.log(best)


@dataclass(frozen=True)
class PressureCurve:
    """Samples of the pressure plus the bracketed zero."""

    method: str  # "spectral" or "finite-level"
    t_star: float
    bracket: tuple[float, float]
    samples: tuple[tuple[float, float], ...]  # (t, P(t)) sorted by t
    n_used: int | None = None
    note: str | None = None

    @property
    def converged(self) -> bool:
        return self.note is None or "did not" not in self.note


def _bisect_zero(evaluate, tol, prec, max_expand=64):
    """Bisection for the unique zero of a strictly decreasing function."""
    with mpmath.workprec(prec):
        tol = mpmath.mpf(tol)
        samples = []
        p0 = evaluate(mpmath.mpf(0))
        samples.append((0.0, float(p0)))
        if p0 <= 0:
            return mpmath.mpf(0), (mpmath.mpf(0), mpmath.mpf(0)), samples, "pressure at 0 is nonpositive; the zero is 0"
        hi = mpmath.mpf(1)
        for _ in range(max_expand):
            p = evaluate(hi)
            samples.append((float(hi), float(p)))
            if p < 0:
                break
            hi *= 2
        else:
            raise NonConvergenceError("could not bracket the pressure zero")
        lo = mpmath.mpf(0)
        while hi - lo > tol:
            mid = (lo + hi) / 2
            p = evaluate(mid)
            samples.append((float(mid), float(p)))
            if p > 0:
                lo = mid
            elif p < 0:
                hi = mid
            else:
                lo = hi = mid
        return (lo + hi) / 2, (lo, hi), samples, None


def pressure_zero(
    mc: MoranConstruction | None = None,
    shift: Subshift | None = None,
    ratios=None,
    tol=1e-10,
    prec: int = DEFAULT_PRECISION,
    budget: int = DEFAULT_NODE_BUDGET,
) -> PressureCurve:
    """The unique t with P(t) = 0, with a certified bracket of width < tol.

    Similarity constructions (1D homotheties) are solved spectrally, which is
    the exact limit.  Otherwise finite-level pressures are used with the level
    doubled until consecutive roots agree within the tolerance; that fallback
    is a heuristic and is labeled as such in the result.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if mc is not None and mc.system.dimension == 1 and shift is None:
        shift = mc.subshift
        # pressure of {phi_w(W)} differs from the ratio-weighted shift only by
        # the diam(W)^t factor, which vanishes in the (1/n) log limit
        ratios = mc.system.ratios()
    if shift is not None:
        if ratios is None:
            raise ValueError("ratios are required with a subshift")

        def evaluate(t):
            return pressure_spectral(shift, ratios, t, prec=prec)

        root, bracket, samples, note = _bisect_zero(evaluate, tol, prec)
        samples = tuple(sorted(set(samples)))
        return PressureCurve(
            method="spectral",
            t_star=float(root),
            bracket=(float(bracket[0]), float(bracket[1])),
            samples=samples,
            note=note,
        )

    if mc is None:
        raise ValueError("either a construction or (subshift, ratios) is required")

    n = 4
    prev = None
    last = None
    while True:
        def evaluate(t, n=n):
            return pressure_at(mc, t, n, prec=prec, budget=budget)

        root, bracket, samples, note = _bisect_zero(evaluate, tol, prec)
        if prev is not None and abs(root - prev) < max(mpmath.mpf(tol), mpmath.mpf(10) ** -12) * 10:
            slack = abs(root - prev)
            return PressureCurve(
                method="finite-level",
                t_star=float(root),
                bracket=(float(bracket[0] - slack), float(bracket[1] + slack)),
                samples=tuple(sorted(set(samples))),
                n_used=n,
                note="finite-level roots stabilized; bracket widened by the last step",
            )
        prev = root
        last = (root, bracket, samples)
        n *= 2
        if n > 4096:
            raise NonConvergenceError("finite-level pressure roots did not stabilize")


def dimension_report(
    mc: MoranConstruction,
    evidence=None,
    tol=1e-10,
    prec: int = DEFAULT_PRECISION,
    box_depth: int = 10,
    budget: int = DEFAULT_NODE_BUDGET,
):
    """Pressure zero plus a box-count cross-check and the conditional claim.

    The dimension identification is conditional on uniform finite clustering;
    the attached evidence (if any) is an empirical scan, never a proof.
    """
    curve = pressure_zero(mc=mc, tol=tol, prec=prec, budget=budget)
    scales = []
    counts = []
    slope = None
    if mc.system.dimension == 1:
        import math as _math

        from .geosets import attractor_cover

        for k in range(max(1, box_depth - 3), box_depth + 1):
            delta = Fraction(1, 2**k)
            cover = attractor_cover(mc, delta / 8, budget=budget)
            boxes = set()
            for lo, hi in cover.intervals:
                first = _math.floor(lo / delta)
                last = max(first, _math.ceil(hi / delta) - 1)  # half-open grid cells
                boxes.update(range(first, last + 1))
            scales.append(float(delta))
            counts.append(len(boxes))
        import math

        xs = [math.log(1 / s) for s in scales]
        ys = [math.log(c) for c in counts]
        mean_x = sum(xs) / len(xs)
        mean_y = sum(ys) / len(ys)
        num = sum((a - mean_x) * (b - mean_y) for a, b in zip(xs, ys))
        den = sum((a - mean_x) ** 2 for a in xs)
        slope = num / den if den else None

    return DimensionReport(
        t_star=curve.t_star,
        bracket=curve.bracket,
        method=curve.method,
        box_scales=tuple(scales),
        box_counts=tuple(counts),
        box_slope=slope,
        evidence_max_count=None if evidence is None else evidence.max_count,
        claim=(
            "under uniform finite clustering, the Hausdorff and Assouad dimensions "
            "of the limit set both equal t_star"
        ),
    )


@dataclass(frozen=True)
class DimensionReport:
    t_star: float
    bracket: tuple[float, float]
    method: str
    box_scales: tuple[float, ...]
    box_counts: tuple[int, ...]
    box_slope: float | None
    evidence_max_count: int | None
    claim: str
