"""Cubical scenes: the unit n-cube minus open isothetic boxes, with optional slab gluings.

Coordinates are exact rationals. A scene is only a declaration; `ditop.grid.compactify`
turns it into the cell complex the path engine works on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    BoxOutOfAmbient,
    DegenerateBox,
    IdentificationConflict,
    MarkedPointForbidden,
    SceneFormatError,
)

Interval = tuple[Fraction, Fraction]
Box = tuple[Interval, ...]
Point = tuple[Fraction, ...]


def rational(value) -> Fraction:
    """Exact rational from an int, a Fraction or a decimal/fraction string ("0.2", "1/3").

    Binary floats are rejected: 0.1 has no exact value and cell membership must be exact.
    """
    if isinstance(value, bool):
        raise SceneFormatError(f"not a coordinate: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        raise SceneFormatError(f"binary float {value!r} rejected; use a decimal or fraction string")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SceneFormatError(f"bad rational {value!r}") from exc
    raise SceneFormatError(f"not a coordinate: {value!r}")


def fmt(q: Fraction) -> str:
    """Shortest exact text for a rational: "1", "0.25" when the decimal terminates, else "1/3"."""
    if q.denominator == 1:
        return str(q.numerator)
    den = q.denominator
    while den % 2 == 0:
        den //= 2
    while den % 5 == 0:
        den //= 5
    if den == 1:
        digits = 0
        while (q * 10**digits).denominator != 1:
            digits += 1
        scaled = abs(q.numerator) * 10**digits // q.denominator
        sign = "-" if q < 0 else ""
        whole, frac = divmod(scaled, 10**digits)
        return f"{sign}{whole}.{frac:0{digits}d}"
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class SlabIdentification:
    """Glue the hyperplane x[axis] = target onto x[axis] = source by translation."""

    axis: int
    source: Fraction
    target: Fraction


@dataclass(frozen=True)
class CubicalScene:
    dim: int
    forbidden: tuple[Box, ...] = ()
    identifications: tuple[SlabIdentification, ...] = ()
    marked_points: tuple[tuple[str, Point], ...] = ()

    @property
    def points(self) -> dict[str, Point]:
        return dict(self.marked_points)

    def point(self, name: str) -> Point:
        for n, p in self.marked_points:
            if n == name:
                return p
        raise KeyError(name)

    def identification(self, axis: int) -> SlabIdentification | None:
        for ident in self.identifications:
            if ident.axis == axis:
                return ident
        return None

    def is_forbidden(self, point: Iterable[Fraction]) -> bool:
        point = tuple(point)
        return any(all(lo < x < hi for x, (lo, hi) in zip(point, box)) for box in self.forbidden)

    def with_points(self, **points) -> "CubicalScene":
        merged = dict(self.marked_points)
        merged.update({k: tuple(rational(c) for c in v) for k, v in points.items()})
        return CubicalScene(self.dim, self.forbidden, self.identifications, tuple(merged.items()))


def make_scene(dim: int, boxes=(), identifications=(), points: Mapping | None = None) -> CubicalScene:
    """Build (unvalidated) scene from loosely typed input: rationals may be ints, Fractions or strings."""
    fboxes = tuple(tuple((rational(lo), rational(hi)) for lo, hi in box) for box in boxes)
    idents = []
    for ident in identifications:
        if isinstance(ident, SlabIdentification):
            idents.append(ident)
        elif isinstance(ident, Mapping):
            idents.append(SlabIdentification(int(ident["axis"]), rational(ident["source"]), rational(ident["target"])))
        else:
            axis, s, t = ident
            idents.append(SlabIdentification(int(axis), rational(s), rational(t)))
    pts = tuple((str(name), tuple(rational(c) for c in coords)) for name, coords in (points or {}).items())
    return CubicalScene(int(dim), fboxes, tuple(idents), pts)


def validate_scene(scene: CubicalScene) -> CubicalScene:
    if scene.dim < 1:
        raise SceneFormatError("dim must be a positive integer", dim=scene.dim)
    for k, box in enumerate(scene.forbidden):
        if len(box) != scene.dim:
            raise SceneFormatError(f"box {k} has {len(box)} intervals, expected {scene.dim}", box=k)
        for axis, (lo, hi) in enumerate(box):
            if not lo < hi:
                raise DegenerateBox(f"box {k} is empty on axis {axis}: ({lo}, {hi})", box=k, axis=axis)
            if lo < 0 or hi > 1:
                raise BoxOutOfAmbient(f"box {k} leaves the unit cube on axis {axis}", box=k, axis=axis)
    seen_axes: set[int] = set()
    for ident in scene.identifications:
        if not 0 <= ident.axis < scene.dim:
            raise IdentificationConflict(f"identification axis {ident.axis} out of range", axis=ident.axis)
        if ident.axis in seen_axes:
            raise IdentificationConflict(f"two identifications on axis {ident.axis}", axis=ident.axis)
        seen_axes.add(ident.axis)
        if not 0 <= ident.source < ident.target <= 1:
            raise IdentificationConflict(
                f"identification on axis {ident.axis} needs 0 <= source < target <= 1", axis=ident.axis
            )
        for k, box in enumerate(scene.forbidden):
            lo, hi = box[ident.axis]
            if lo < ident.source < hi or lo < ident.target < hi:
                raise IdentificationConflict(
                    f"box {k} meets the glued hyperplane on axis {ident.axis}", axis=ident.axis, box=k
                )
    for name, p in scene.marked_points:
        if len(p) != scene.dim:
            raise SceneFormatError(f"point {name!r} has wrong dimension", point=name)
        if any(not 0 <= c <= 1 for c in p):
            raise SceneFormatError(f"point {name!r} lies outside the unit cube", point=name)
        if scene.is_forbidden(p):
            raise MarkedPointForbidden(f"point {name!r} lies inside a forbidden box", point=name)
    return scene


# JSON scene files

def _reject_float(text: str):
    raise SceneFormatError(f"binary float {text} rejected; write it as a string such as \"{text}\"")


def loads_json(text: str):
    """json.loads that refuses float literals and reports the position of syntax errors."""
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise SceneFormatError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno, position=exc.pos) from exc


def scene_from_dict(data: Mapping) -> CubicalScene:
    try:
        dim = data["dim"]
    except (KeyError, TypeError) as exc:
        raise SceneFormatError("scene needs a 'dim' field") from exc
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise SceneFormatError("'dim' must be an integer")
    try:
        scene = make_scene(
            dim,
            boxes=data.get("boxes", ()),
            identifications=data.get("identifications", ()),
            points=data.get("points", {}),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SceneFormatError(f"malformed scene: {exc}") from exc
    return validate_scene(scene)


def scene_to_dict(scene: CubicalScene) -> dict:
    return {
        "dim": scene.dim,
        "boxes": [[[fmt(lo), fmt(hi)] for lo, hi in box] for box in scene.forbidden],
        "identifications": [
            {"axis": i.axis, "source": fmt(i.source), "target": fmt(i.target)} for i in scene.identifications
        ],
        "points": {name: [fmt(c) for c in p] for name, p in scene.marked_points},
    }


def load_scene(path) -> CubicalScene:
    with open(path, encoding="utf-8") as fh:
        return scene_from_dict(loads_json(fh.read()))
