"""System description files: exact-rational JSON in, validated objects out.

Rationals travel as strings like "1/3" (JSON numbers cannot carry exactness);
integers are accepted and decimal floats are rejected so nothing silently
rounds.  Validation errors name the offending field.
"""

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from .maps import DiagonalAffine2D, Homothety1D
from .moran import IfsSystem, SeedInterval, SeedRect, SeedSet, seed_set
from .subshift import Subshift

F = Fraction


class SpecValidationError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _rational(value, field: str) -> F:
    if isinstance(value, bool):
        raise SpecValidationError(field, "booleans are not numbers")
    if isinstance(value, int):
        return F(value)
    if isinstance(value, str):
        try:
            return F(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecValidationError(field, f"malformed rational {value!r}") from exc
    if isinstance(value, float):
        raise SpecValidationError(field, "floats are not exact; write the value as 'p/q'")
    raise SpecValidationError(field, f"expected a rational string, got {type(value).__name__}")


def _ratio(value, field: str) -> F:
    r = _rational(value, field)
    if not 0 < r < 1:
        raise SpecValidationError(field, f"contraction ratio {r} outside (0, 1)")
    return r


@dataclass(frozen=True)
class ParsedSpec:
    system: IfsSystem
    shift: Subshift
    seed: SeedSet
    label: str
    digest: str


def parse_spec_dict(data: dict, digest: str = "") -> ParsedSpec:
    dimension = data.get("dimension")
    if dimension not in (1, 2):
        raise SpecValidationError("dimension", f"must be 1 or 2, got {dimension!r}")
    raw_maps = data.get("maps")
    if not isinstance(raw_maps, list) or len(raw_maps) < 2:
        raise SpecValidationError("maps", "need a list of at least two maps")
    maps = []
    for k, entry in enumerate(raw_maps):
        field = f"maps[{k}]"
        kind = entry.get("type")
        if dimension == 1:
            if kind != "homothety":
                raise SpecValidationError(f"{field}.type", f"expected 'homothety', got {kind!r}")
            maps.append(
                Homothety1D(_ratio(entry.get("r"), f"{field}.r"), _rational(entry.get("a"), f"{field}.a"))
            )
        else:
            if kind != "diag_affine":
                raise SpecValidationError(f"{field}.type", f"expected 'diag_affine', got {kind!r}")
            maps.append(
                DiagonalAffine2D(
                    _ratio(entry.get("r"), f"{field}.r"),
                    _ratio(entry.get("s"), f"{field}.s"),
                    _rational(entry.get("a"), f"{field}.a"),
                    _rational(entry.get("b"), f"{field}.b"),
                )
            )
    try:
        system = IfsSystem(tuple(maps))
    except ValueError as exc:
        raise SpecValidationError("maps", str(exc)) from exc

    shift_data = data.get("subshift", {"alphabet": system.kappa, "forbidden": []})
    alphabet = shift_data.get("alphabet")
    if alphabet != system.kappa:
        raise SpecValidationError(
            "subshift.alphabet", f"must equal the number of maps ({system.kappa}), got {alphabet!r}"
        )
    try:
        shift = Subshift.from_json_dict(shift_data)
    except ValueError as exc:
        raise SpecValidationError("subshift.forbidden", str(exc)) from exc

    seed_data = data.get("seed")
    override = None
    if seed_data is not None:
        if dimension == 1:
            if set(seed_data) != {"lo", "hi"}:
                raise SpecValidationError("seed", "expected keys lo and hi")
            override = SeedInterval(
                _rational(seed_data["lo"], "seed.lo"), _rational(seed_data["hi"], "seed.hi")
            )
        else:
            if set(seed_data) != {"x0", "x1", "y0", "y1"}:
                raise SpecValidationError("seed", "expected keys x0, x1, y0, y1")
            override = SeedRect(
                _rational(seed_data["x0"], "seed.x0"),
                _rational(seed_data["x1"], "seed.x1"),
                _rational(seed_data["y0"], "seed.y0"),
                _rational(seed_data["y1"], "seed.y1"),
            )
    try:
        seed = seed_set(system, override)
    except ValueError as exc:
        raise SpecValidationError("seed", str(exc)) from exc

    label = data.get("label", "")
    if not isinstance(label, str):
        raise SpecValidationError("label", "must be a string")
    return ParsedSpec(system=system, shift=shift, seed=seed, label=label, digest=digest)


def parse_spec(path) -> ParsedSpec:
    with open(path, "rb") as fh:
        blob = fh.read()
    digest = hashlib.sha256(blob).hexdigest()
    try:
        data = json.loads(blob)
    except json.JSONDecodeError as exc:
        raise SpecValidationError("<file>", f"not valid JSON: {exc}") from exc
    return parse_spec_dict(data, digest)


def _fmt(q: F) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def emit_spec_dict(system: IfsSystem, shift: Subshift, seed: SeedSet, label: str = "") -> dict:
    maps = []
    for m in system.maps:
        if system.dimension == 1:
            maps.append({"type": "homothety", "r": _fmt(m.r), "a": _fmt(m.a)})
        else:
            maps.append(
                {"type": "diag_affine", "r": _fmt(m.r), "s": _fmt(m.s), "a": _fmt(m.a), "b": _fmt(m.b)}
            )
    if system.dimension == 1:
        seed_data = {"lo": _fmt(seed.lo), "hi": _fmt(seed.hi)}
    else:
        seed_data = {
            "x0": _fmt(seed.x0),
            "x1": _fmt(seed.x1),
            "y0": _fmt(seed.y0),
            "y1": _fmt(seed.y1),
        }
    out = {
        "dimension": system.dimension,
        "maps": maps,
        "subshift": shift.to_json_dict(),
        "seed": seed_data,
    }
    if label:
        out["label"] = label
    return out
