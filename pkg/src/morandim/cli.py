"""Batch command-line interface: parse a system file, run one analysis, emit files.

Exit codes: 0 success, 1 validation problem, 2 budget exceeded, 3 numeric
non-convergence.  Data outputs (CSV/JSON/SVG) are deterministic for a fixed
(spec, parameters, seed, precision); the run report carries the wall time and
is written separately so the data files stay byte-stable.
"""

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time
from fractions import Fraction

from . import __version__
from .furstenberg import demo_construction, furstenberg_demo
from .geosets import attractor_cover, geo_magnify
from .measures import (
    MarkovMeasure,
    entropy_empirical,
    entropy_exact,
    local_dim_symbolic,
)
from .microsets import assouad_estimate_for, branching_count, microset_family
from .moran import BudgetExceededError, DEFAULT_NODE_BUDGET, MoranConstruction
from .pressure import (
    DEFAULT_PRECISION,
    NonConvergenceError,
    dimension_report,
    pressure_zero,
)
from .render import render_1d, render_2d, render_strips
from .separation import ScanGrid, dedup, fcp_scan
from .specfile import SpecValidationError, parse_spec

F = Fraction


def _fmt_frac(q) -> str:
    q = F(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_json(path: str, data) -> None:
    _atomic_write(path, json.dumps(data, indent=2, sort_keys=True) + "\n")


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _atomic_write(path, buf.getvalue())


def _point_str(p) -> str:
    if isinstance(p, tuple):
        return f"({_fmt_frac(p[0])},{_fmt_frac(p[1])})"
    return _fmt_frac(p)


def _run_report(out_dir, command, args, outputs, started) -> None:
    report = {
        "command": command,
        "version": __version__,
        "spec_digest": getattr(args, "_digest", "builtin"),
        "parameters": {
            k: v
            for k, v in sorted(vars(args).items())
            if k not in ("func", "_digest") and not k.startswith("_") and v is not None
        },
        "outputs": sorted(outputs),
        "seed": getattr(args, "seed", None),
        "wall_time_s": round(time.time() - started, 3),
    }
    _write_json(os.path.join(out_dir, "run_report.json"), report)


def _load(args) -> MoranConstruction:
    spec = parse_spec(args.spec)
    args._digest = spec.digest
    return MoranConstruction(spec.system, spec.shift, spec.seed)


def _cmd_pressure(args):
    mc = _load(args)
    curve = pressure_zero(mc=mc, tol=args.tol, prec=args.precision, budget=args.budget)
    rows = [[f"{t!r}", f"{p!r}"] for t, p in curve.samples]
    _write_csv(os.path.join(args.out, "pressure_curve.csv"), ["t", "pressure"], rows)
    _write_json(
        os.path.join(args.out, "pressure_root.json"),
        {
            "t_star": curve.t_star,
            "bracket_lo": curve.bracket[0],
            "bracket_hi": curve.bracket[1],
            "method": curve.method,
            "n_used": curve.n_used,
            "note": curve.note,
        },
    )
    print(f"pressure zero t* = {curve.t_star:.12g} ({curve.method})")
    return ["pressure_curve.csv", "pressure_root.json"]


def _cmd_dim(args):
    mc = _load(args)
    rep = dimension_report(
        mc, tol=args.tol, prec=args.precision, box_depth=args.depth, budget=args.budget
    )
    _write_json(
        os.path.join(args.out, "dim.json"),
        {
            "t_star": rep.t_star,
            "bracket": list(rep.bracket),
            "method": rep.method,
            "box_scales": list(rep.box_scales),
            "box_counts": list(rep.box_counts),
            "box_slope": rep.box_slope,
            "claim": rep.claim,
        },
    )
    slope = "n/a" if rep.box_slope is None else f"{rep.box_slope:.6f}"
    print(f"t* = {rep.t_star:.12g}, box slope = {slope}")
    return ["dim.json"]


def _cmd_check_sep(args):
    mc = _load(args)
    grid = ScanGrid(sample_depth=args.depth, ladder=args.ladder)
    rep = fcp_scan(mc, grid, mode=args.mode, budget=args.budget)
    rows = [[_point_str(p), _fmt_frac(r), c] for p, r, c in rep.samples]
    _write_csv(os.path.join(args.out, "cluster_samples.csv"), ["point", "radius", "count"], rows)
    _write_json(
        os.path.join(args.out, "cluster_report.json"),
        {
            "mode": rep.mode,
            "max_count": rep.max_count,
            "witness_point": _point_str(rep.witness_point),
            "witness_radius": _fmt_frac(rep.witness_radius),
            "stabilized": rep.stabilized,
            "sample_depth": rep.sample_depth,
            "n_points": rep.n_points,
        },
    )
    print(f"max cluster count {rep.max_count} at {_point_str(rep.witness_point)}")
    return ["cluster_samples.csv", "cluster_report.json"]


def _cmd_dedup(args):
    mc = _load(args)
    res = dedup(mc.system, args.depth, budget=args.budget)
    _write_json(
        os.path.join(args.out, "dedup.json"),
        {
            "depth": res.depth,
            "forbidden": [str(w) for w in res.forbidden_words],
            "exhaustive": res.exhaustive,
            "gamma_counts": list(res.gamma_counts),
            "duplicate_counts": list(res.duplicate_counts),
        },
    )
    rows = [
        [n + 1, res.gamma_counts[n], res.duplicate_counts[n]]
        for n in range(len(res.gamma_counts))
    ]
    _write_csv(
        os.path.join(args.out, "dedup_levels.csv"),
        ["level", "allowed_words", "duplicates"],
        rows,
    )
    print(
        f"dedup to depth {res.depth}: {len(res.forbidden_words)} minimal forbidden words, "
        f"level counts {list(res.gamma_counts[:6])}{'...' if res.depth > 6 else ''}"
    )
    return ["dedup.json", "dedup_levels.csv"]


def _cmd_microsets(args):
    mc = _load(args)
    fam = microset_family(mc.subshift, args.depth)
    counts = [[n, branching_count(mc.subshift, n)] for n in range(1, args.depth + 1)]
    _write_csv(os.path.join(args.out, "branching_counts.csv"), ["n", "N_n"], counts)
    _write_json(
        os.path.join(args.out, "microsets.json"),
        {
            "depth": fam.depth,
            "family_size": len(fam.members),
            "member_sizes": list(fam.sizes()),
            "provenance": [str(w) for w in fam.provenance],
            "complete": fam.complete,
        },
    )
    print(f"{len(fam.members)} distinct depth-{args.depth} shadows, N_n max {fam.max_size()}")
    return ["branching_counts.csv", "microsets.json"]


def _cmd_assouad(args):
    mc = _load(args)
    est = assouad_estimate_for(mc, args.depth)
    rows = [[n, f"{t!r}"] for n, t in est.t_table]
    _write_csv(os.path.join(args.out, "assouad_table.csv"), ["n", "t_n"], rows)
    _write_json(
        os.path.join(args.out, "assouad.json"),
        {
            "alpha_bar": _fmt_frac(est.alpha_bar),
            "n_max": est.n_max,
            "fekete_bound": est.fekete_bound,
            "estimate": est.estimate,
            "diff_quotients": [[n, q] for n, q in est.diff_quotients],
        },
    )
    print(f"assouad estimate {est.estimate:.6f} (certified upper bound {est.fekete_bound:.6f})")
    return ["assouad_table.csv", "assouad.json"]


def _measure_from_args(args, mc) -> MarkovMeasure:
    if args.weights:
        weights = [F(w) for w in args.weights.split(",")]
        return MarkovMeasure.bernoulli(weights, mc.subshift)
    kappa = mc.system.kappa
    return MarkovMeasure.bernoulli([F(1, kappa)] * kappa, mc.subshift)


def _cmd_localdim(args):
    mc = _load(args)
    measure = _measure_from_args(args, mc)
    stats = local_dim_symbolic(measure, mc, args.length, args.samples, args.seed)
    rows = [
        [k, f"{s.quotient!r}", f"{s.tail_min!r}", f"{s.halfway!r}"]
        for k, s in enumerate(stats.samples)
    ]
    _write_csv(
        os.path.join(args.out, "localdim_samples.csv"),
        ["sample", "quotient", "tail_min", "halfway"],
        rows,
    )
    _write_json(
        os.path.join(args.out, "localdim.json"),
        {
            "n": stats.n,
            "samples": len(stats.samples),
            "seed": stats.seed,
            "mean": stats.mean,
            "mean_tail_min": stats.mean_tail_min,
        },
    )
    print(f"symbolic local dimension mean {stats.mean:.6f} over {len(stats.samples)} samples")
    return ["localdim_samples.csv", "localdim.json"]


def _cmd_entropy(args):
    mc = _load(args)
    measure = _measure_from_args(args, mc)
    exact = entropy_exact(measure)
    est = entropy_empirical(measure, args.length, args.samples, args.seed)
    _write_json(
        os.path.join(args.out, "entropy.json"),
        {
            "exact": exact,
            "empirical_mean": est.mean,
            "empirical_stderr": est.stderr,
            "n": est.n,
            "samples": est.samples,
            "seed": est.seed,
        },
    )
    print(f"entropy exact {exact:.6f}, empirical {est.mean:.6f} +- {est.stderr:.6f}")
    return ["entropy.json"]


def _cmd_furstenberg(args):
    demo = furstenberg_demo(depth=args.depth, j_max=args.jmax, anchor_len=args.anchor_len)
    rows = [
        [
            row.j,
            row.m,
            row.n,
            _fmt_frac(row.u),
            _fmt_frac(row.v),
            f"{float(row.distance)!r}",
            _fmt_frac(row.distance),
            row.sandwich_lower_ok,
            row.sandwich_upper_ok,
        ]
        for row in demo.rows
    ]
    _write_csv(
        os.path.join(args.out, "furstenberg_convergence.csv"),
        ["j", "m", "n", "u", "v", "distance", "distance_exact", "sandwich_lo", "sandwich_hi"],
        rows,
    )
    _write_json(
        os.path.join(args.out, "furstenberg_certificates.json"),
        {
            "gap": [_fmt_frac(demo.level1_gap[0]), _fmt_frac(demo.level1_gap[1])],
            "eta": _fmt_frac(demo.eta),
            "resolution": _fmt_frac(demo.resolution),
            "n_candidate_windows": demo.n_candidate_windows,
            "n_certified": len(demo.certificates),
            "undecided": [[_fmt_frac(u), _fmt_frac(v)] for u, v in demo.undecided],
            "certificates": [
                {
                    "u": _fmt_frac(c.u),
                    "v": _fmt_frac(c.v),
                    "witness": _fmt_frac(c.witness),
                    "anchor_word": str(c.anchor_word),
                    "anchor_endpoint": c.anchor_endpoint,
                    "copy": c.copy,
                    "floor": _fmt_frac(c.floor),
                    "verdict": c.certified,
                }
                for c in demo.certificates
            ],
        },
    )
    mc = demo_construction()
    cover = attractor_cover(mc, demo.resolution)
    k_set = cover.affine(F(1, 2), 0).union(cover.affine(F(1, 2), F(1, 2)))
    strips = [("K = E/2 u E/2+1/2", k_set)]
    for row in demo.rows:
        local = attractor_cover(mc, demo.resolution * (row.v - row.u), window=(row.u, row.v))
        strips.append((f"A_{row.j} (m={row.m})", geo_magnify(local, row.u, row.v)))
    _atomic_write(os.path.join(args.out, "furstenberg_strips.svg"), render_strips(strips))
    print(
        f"certified {len(demo.certificates)}/{demo.n_candidate_windows} windows; "
        f"distances {[round(float(r.distance), 5) for r in demo.rows]}"
    )
    return [
        "furstenberg_convergence.csv",
        "furstenberg_certificates.json",
        "furstenberg_strips.svg",
    ]


def _cmd_render(args):
    mc = _load(args)
    if mc.system.dimension == 1:
        svg = render_1d(mc, args.depth, gap_overlay=args.gaps, budget=args.budget)
    else:
        svg = render_2d(mc, args.depth, budget=args.budget)
    _atomic_write(os.path.join(args.out, "render.svg"), svg)
    print(f"rendered depth {args.depth} to render.svg")
    return ["render.svg"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morandim",
        description="Exact symbolic dynamics for Moran constructions and IFS attractors",
    )
    parser.add_argument("--version", action="version", version=f"morandim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec_required=True):
        if spec_required:
            p.add_argument("--spec", required=True, help="system description JSON")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
        p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="bits")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("pressure", help="pressure curve and its zero")
    common(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_pressure)

    p = sub.add_parser("dim", help="dimension report with box-count cross-check")
    common(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--depth", type=int, default=10, help="finest box scale 2^-depth")
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser("check-sep", help="clustering scan over a sample grid")
    common(p)
    p.add_argument("--depth", type=int, default=5, help="sample grid depth")
    p.add_argument("--ladder", type=int, default=4, help="radius ladder length")
    p.add_argument("--mode", choices=["words", "maps"], default="words")
    p.set_defaults(func=_cmd_check_sep)

    p = sub.add_parser("dedup", help="exact map-coincidence dedup")
    common(p)
    p.add_argument("--depth", type=int, default=8)
    p.set_defaults(func=_cmd_dedup)

    p = sub.add_parser("microsets", help="magnification shadow family and counts")
    common(p)
    p.add_argument("--depth", type=int, default=6)
    p.set_defaults(func=_cmd_microsets)

    p = sub.add_parser("assouad", help="branching-exponent estimate")
    common(p)
    p.add_argument("--depth", type=int, default=32, help="largest level n")
    p.set_defaults(func=_cmd_assouad)

    p = sub.add_parser("localdim", help="symbolic local dimension sampling")
    common(p)
    p.add_argument("--weights", default="", help="comma list of rational weights")
    p.add_argument("--length", type=int, default=2000)
    p.add_argument("--samples", type=int, default=40)
    p.set_defaults(func=_cmd_localdim)

    p = sub.add_parser("entropy", help="exact vs empirical entropy")
    common(p)
    p.add_argument("--weights", default="", help="comma list of rational weights")
    p.add_argument("--length", type=int, default=1000)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=_cmd_entropy)

    p = sub.add_parser("furstenberg-demo", help="window magnification demo (built-in system)")
    common(p, spec_required=False)
    p.add_argument("--depth", type=int, default=14, help="cover resolution 2^-depth")
    p.add_argument("--jmax", type=int, default=5)
    p.add_argument("--anchor-len", dest="anchor_len", type=int, default=6)
    p.set_defaults(func=_cmd_furstenberg)

    p = sub.add_parser("render", help="SVG rendering of the construction")
    common(p)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--gaps", action="store_true", help="overlay first-level gaps (1D)")
    p.set_defaults(func=_cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.time()
    try:
        outputs = args.func(args)
    except (SpecValidationError, ValueError, OSError) as exc:
        print(json.dumps({"error": "validation", "message": str(exc)}), file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(json.dumps({"error": "budget", "message": str(exc)}), file=sys.stderr)
        return 2
    except NonConvergenceError as exc:
        print(json.dumps({"error": "non-convergence", "message": str(exc)}), file=sys.stderr)
        return 3
    _run_report(args.out, args.command, args, outputs, started)
    return 0


if __name__ == "__main__":
    sys.exit(main())
