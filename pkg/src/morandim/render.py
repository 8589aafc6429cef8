"""Deterministic SVG renderings: interval stacks, rectangle nests, strip plots.

Exact rational coordinates are rounded to six decimals for display only; the
underlying data never passes through floats before this point.
"""

from fractions import Fraction

from .geosets import GeoSet
from .moran import DEFAULT_NODE_BUDGET, BudgetExceededError, MoranConstruction

F = Fraction


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _svg(width: float, height: float, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    )
    return "\n".join([head, *body, "</svg>"])


def _level_words(mc: MoranConstruction, depth: int, budget: int):
    level = [((), None)]
    count = 0
    for n in range(depth):
        nxt = []
        for symbols, m in level:
            state = mc.subshift.state_after(symbols)
            for s in range(1, mc.system.kappa + 1):
                if mc.subshift.transitions[state][s] is None:
                    continue
                child = m.compose(mc.system.map_for(s)) if m else mc.system.map_for(s)
                count += 1
                if count > budget:
                    raise BudgetExceededError(f"render exceeded {budget} nodes")
                nxt.append((symbols + (s,), child))
        level = nxt
        yield n + 1, level


def render_1d(
    mc: MoranConstruction,
    depth: int,
    width: float = 800.0,
    row_height: float = 22.0,
    gap_overlay: bool = False,
    budget: int = DEFAULT_NODE_BUDGET,
) -> str:
    """Stacked rows of level intervals, one row per level, plus a union strip."""
    if mc.system.dimension != 1:
        raise ValueError("render_1d needs a 1D construction")
    lo0, hi0 = float(mc.seed.lo), float(mc.seed.hi)
    span = hi0 - lo0
    height = row_height * (depth + 1) + 10
    body = [f'<rect width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>']

    def xpos(v: float) -> float:
        return (v - lo0) / span * (width - 20) + 10

    rows = None
    for n, level in _level_words(mc, depth, budget):
        y = (n - 1) * row_height + 5
        for symbols, m in sorted(level):
            a = float(m.r * mc.seed.lo + m.a)
            b = float(m.r * mc.seed.hi + m.a)
            body.append(
                f'<rect x="{_fmt(xpos(a))}" y="{_fmt(y)}" width="{_fmt(max(xpos(b) - xpos(a), 0.2))}" '
                f'height="{_fmt(row_height - 4)}" fill="#2b6cb0" fill-opacity="0.85"/>'
            )
        rows = level
    y = depth * row_height + 5
    pieces = sorted(
        (m.r * mc.seed.lo + m.a, m.r * mc.seed.hi + m.a) for _, m in (rows or [])
    )
    union: list[tuple[F, F]] = []
    for a, b in pieces:
        if union and a <= union[-1][1]:
            if b > union[-1][1]:
                union[-1] = (union[-1][0], b)
        else:
            union.append((a, b))
    for a, b in union:
        body.append(
            f'<rect x="{_fmt(xpos(float(a)))}" y="{_fmt(y)}" width="{_fmt(max(xpos(float(b)) - xpos(float(a)), 0.2))}" '
            f'height="{_fmt(row_height - 4)}" fill="#1a202c"/>'
        )
    if gap_overlay and rows:
        pieces1 = sorted((m.apply(mc.seed.lo), m.apply(mc.seed.hi)) for m in mc.system.maps)
        merged: list[tuple[F, F]] = []
        for a, b in pieces1:
            if merged and a <= merged[-1][1]:
                if b > merged[-1][1]:
                    merged[-1] = (merged[-1][0], b)
            else:
                merged.append((a, b))
        gaps = []
        cursor = mc.seed.lo
        for a, b in merged:
            if a > cursor:
                gaps.append((cursor, a))
            cursor = max(cursor, b)
        if cursor < mc.seed.hi:
            gaps.append((cursor, mc.seed.hi))
        for a, b in gaps:
            body.append(
                f'<rect x="{_fmt(xpos(float(a)))}" y="0" width="{_fmt(xpos(float(b)) - xpos(float(a)))}" '
                f'height="{_fmt(height)}" fill="#e53e3e" fill-opacity="0.25"/>'
            )
    return _svg(width, height, body)


def render_2d(
    mc: MoranConstruction,
    depth: int,
    size: float = 640.0,
    budget: int = DEFAULT_NODE_BUDGET,
) -> str:
    """Nested rectangles of every level up to the requested depth."""
    if mc.system.dimension != 2:
        raise ValueError("render_2d needs a 2D construction")
    x0, x1 = float(mc.seed.x0), float(mc.seed.x1)
    y0, y1 = float(mc.seed.y0), float(mc.seed.y1)
    sx = (size - 20) / (x1 - x0)
    sy = (size - 20) / (y1 - y0)
    body = [f'<rect width="{_fmt(size)}" height="{_fmt(size)}" fill="white"/>']
    palette = ["#2b6cb0", "#2f855a", "#b7791f", "#9b2c2c", "#553c9a"]
    for n, level in _level_words(mc, depth, budget):
        color = palette[(n - 1) % len(palette)]
        final = n == depth
        for symbols, m in sorted(level):
            ax = (float(m.r * mc.seed.x0 + m.a) - x0) * sx + 10
            bx = (float(m.r * mc.seed.x1 + m.a) - x0) * sx + 10
            # SVG y axis points down; flip so larger y is higher
            ay = size - ((float(m.s * mc.seed.y1 + m.b) - y0) * sy + 10)
            by = size - ((float(m.s * mc.seed.y0 + m.b) - y0) * sy + 10)
            fill = f'fill="{color}" fill-opacity="0.5"' if final else 'fill="none"'
            body.append(
                f'<rect x="{_fmt(ax)}" y="{_fmt(ay)}" width="{_fmt(bx - ax)}" height="{_fmt(by - ay)}" '
                f'{fill} stroke="{color}" stroke-width="0.6"/>'
            )
    return _svg(size, size, body)


def render_strips(strips: list[tuple[str, GeoSet]], width: float = 800.0, row_height: float = 26.0) -> str:
    """One labeled horizontal strip per interval union; used for magnification tables."""
    height = row_height * len(strips) + 10
    body = [f'<rect width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>']
    for k, (label, gs) in enumerate(strips):
        y = k * row_height + 5
        body.append(
            f'<text x="4" y="{_fmt(y + row_height - 10)}" font-size="10" font-family="monospace">{label}</text>'
        )
        for a, b in gs.intervals:
            xa = float(a) * (width - 120) + 110
            xb = float(b) * (width - 120) + 110
            body.append(
                f'<rect x="{_fmt(xa)}" y="{_fmt(y)}" width="{_fmt(max(xb - xa, 0.2))}" '
                f'height="{_fmt(row_height - 8)}" fill="#1a202c"/>'
            )
    return _svg(width, height, body)
