"""Analysis blocks of scene files (retracts, chains, covers) and report serialization.

A region names a set of grid vertices:

    {"points": ["a", "b"], "include": [[["0", "1/3"], ["0", "1/3"]]], "exclude": [...]}

`include`/`exclude` are closed boxes, possibly degenerate. A plain list is shorthand for
{"points": [...]}. Regions are always intersected with the objects of the table at hand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .category import FiniteCategory
from .dipaths import Budget, path_from_steps
from .errors import SceneFormatError
from .grid import GridComplex
from .models import RetractChain
from .retracts import RetractData, find_retract, oriented
from .scene import CubicalScene, fmt, rational, scene_from_dict


@dataclass
class SceneFile:
    scene: CubicalScene
    raw: dict
    budget: Budget | None = None
    blocks: dict = field(default_factory=dict)


def _closed_boxes(data, dim: int):
    boxes = []
    for box in data or ():
        if len(box) != dim:
            raise SceneFormatError("region box has the wrong dimension")
        boxes.append(tuple((rational(lo), rational(hi)) for lo, hi in box))
    return boxes


def resolve_region(grid: GridComplex, region, objects=None) -> tuple:
    """Sorted vertices selected by a region, restricted to `objects` when given."""
    if isinstance(region, (list, tuple)):
        region = {"points": list(region)}
    if not isinstance(region, Mapping):
        raise SceneFormatError(f"bad region: {region!r}")
    dim = grid.dim
    inc = _closed_boxes(region.get("include"), dim)
    exc = _closed_boxes(region.get("exclude"), dim)
    pool = set(objects) if objects is not None else set(grid.vertices)

    def inside(p, boxes):
        return any(all(lo <= c <= hi for c, (lo, hi) in zip(p, b)) for b in boxes)

    chosen = set()
    for v in pool:
        p = grid.vertex_coords(v)
        if inside(p, inc) and not inside(p, exc):
            chosen.add(v)
    for name in region.get("points", ()):
        try:
            v = grid.named(name)
        except KeyError as exc_:
            raise SceneFormatError(f"unknown point {name!r} in region") from exc_
        if v in pool:
            chosen.add(v)
    return tuple(sorted(chosen))


def region_to_dict(grid: GridComplex, vertices) -> dict:
    names = grid.names
    return {
        "points": sorted(names[v] for v in vertices if v in names),
        "coordinates": [[fmt(c) for c in grid.vertex_coords(v)] for v in sorted(vertices)],
    }


def retract_from_block(table: FiniteCategory, grid: GridComplex, block: Mapping, up_to_length=None) -> RetractData | None:
    """Build a retract of the table's objects from a block; unspecified points are searched."""
    direction = block.get("direction", "future")
    if direction not in ("future", "past"):
        raise SceneFormatError(f"retract direction must be future or past, not {direction!r}")
    A = resolve_region(grid, block.get("A", []), table.objects)
    data = find_retract(table, A, direction, up_to_length)
    given = block.get("assignment") or {}
    if not given:
        return data
    if data is None:
        data = RetractData(direction, table.objects, A, {})
    cat = oriented(table, direction)
    for name, spec in given.items():
        x = grid.named(name)
        target = grid.named(spec["target"])
        steps = spec.get("witness_path", [])
        start = x if direction == "future" else target
        path = path_from_steps(grid, start, steps)
        gamma = table.classify(path) if hasattr(table, "classify") else None
        if gamma is None:
            raise SceneFormatError("witness paths need a fundamental-category table")
        if (cat.src(gamma), cat.dst(gamma)) != (x, target):
            raise SceneFormatError(f"witness path for {name!r} does not join it to {spec['target']!r}")
        data.assignment[x] = (target, gamma)
    return data


def chain_from_blocks(table: FiniteCategory, grid: GridComplex, blocks, up_to_length=None) -> RetractChain | None:
    chain = RetractChain(table)
    current = table
    for block in blocks:
        step = retract_from_block(current, grid, block, up_to_length)
        if step is None:
            return None
        chain.steps.append(step)
        current = table.restrict(step.codomain)
    return chain


def load_scene_file(text: str) -> SceneFile:
    from .scene import loads_json

    raw = loads_json(text)
    if not isinstance(raw, dict):
        raise SceneFormatError("scene file must hold a JSON object")
    scene = scene_from_dict(raw)
    budget = None
    if "budget" in raw:
        b = raw["budget"]
        budget = Budget(int(b.get("max_paths", Budget.max_paths)), int(b.get("max_steps", Budget.max_steps)))
    blocks = {k: raw[k] for k in ("retract", "chain", "cover", "pairs") if k in raw}
    return SceneFile(scene, raw, budget, blocks)


def to_jsonable(value):
    """Plain JSON data for reports: rationals as exact strings, tuples as lists."""
    from fractions import Fraction

    if isinstance(value, Fraction):
        return fmt(value)
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    return value


def piece_chains(cover, models: Mapping, budget: Budget) -> dict:
    """Retract chains on the pieces of a cover from a {"1": [...], "2": [...], "0": [...]} block."""
    from .category import HomTable

    chains = {}
    for k in (1, 2, 0):
        blocks = models.get(str(k))
        if blocks is None:
            chains[k] = None
            continue
        pg = cover.pieces[k]
        table = HomTable(pg, sorted(pg.vertices), budget)
        chain = chain_from_blocks(table, cover.grid, blocks, budget.max_steps if pg.has_cycles else None)
        if chain is None:
            raise SceneFormatError(f"no retract chain found on piece {k}", piece=k)
        chains[k] = chain
    return chains
