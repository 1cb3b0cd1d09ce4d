"""Random scenes and retract cases for property checks and the corpus script."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .category import ExplicitCategory, FiniteCategory
from .retracts import RetractData, find_retract, oriented
from .scene import CubicalScene, make_scene


@dataclass(frozen=True)
class CorpusConfig:
    count: int = 50
    max_boxes: int = 3
    denominator: int = 8  # box corners are k/denominator with 0 < k < denominator
    disjoint: bool = False  # require pairwise disjoint closed boxes
    seed: int = 0


def _closures_meet(b1, b2) -> bool:
    return all(lo1 <= hi2 and lo2 <= hi1 for (lo1, hi1), (lo2, hi2) in zip(b1, b2))


def random_box_scene(rng: random.Random, max_boxes: int = 3, denominator: int = 8, disjoint: bool = False) -> CubicalScene:
    """A loop-free 2D scene with 1..max_boxes open boxes strictly inside the unit square.

    Marked points a = (0,0) and b = (1,1) are always allowed.
    """
    n = rng.randint(1, max_boxes)
    boxes: list = []
    tries = 0
    while len(boxes) < n and tries < 200:
        tries += 1
        box = []
        for _ in range(2):
            lo, hi = sorted(rng.sample(range(1, denominator), 2))
            box.append((Fraction(lo, denominator), Fraction(hi, denominator)))
        box = tuple(box)
        if box in boxes or (disjoint and any(_closures_meet(box, b) for b in boxes)):
            continue
        boxes.append(box)
    return make_scene(2, boxes, points={"a": (0, 0), "b": (1, 1)})


def corpus(config: CorpusConfig = CorpusConfig()) -> list[CubicalScene]:
    rng = random.Random(config.seed)
    return [random_box_scene(rng, config.max_boxes, config.denominator, config.disjoint) for _ in range(config.count)]


def random_retracts(table: FiniteCategory, keep, rng: random.Random, tries: int = 6) -> list[RetractData]:
    """Retracts found by the bijection search onto random supersets of `keep`."""
    objs = list(table.objects)
    keep = set(keep)
    out = []
    for _ in range(tries):
        extra = [x for x in objs if x not in keep and rng.random() < rng.choice((0.2, 0.5, 0.8))]
        A = sorted(keep | set(extra))
        if len(A) == len(objs):
            continue
        data = find_retract(table, A, rng.choice(("future", "past")))
        if data is not None:
            out.append(data)
    return out


def corruptions(table: FiniteCategory, data: RetractData, rng: random.Random, limit: int = 4) -> list[RetractData]:
    """Variants of a retract with one assignment changed to another morphism into A."""
    cat = oriented(table, data.direction)
    A = set(data.codomain)
    movable = [x for x in data.domain if x not in A]
    rng.shuffle(movable)
    out = []
    for x in movable:
        current = data.assignment[x]
        options = [(a, g) for a in data.codomain for g in cat.hom(x, a) if (a, g) != current]
        if not options:
            continue
        assignment = dict(data.assignment)
        assignment[x] = rng.choice(options)
        out.append(RetractData(data.direction, data.domain, data.codomain, assignment))
        if len(out) >= limit:
            break
    # dropping a point of A from its own identity is also a corruption
    for a in sorted(A):
        others = [(b, g) for b in data.codomain if b != a for g in cat.hom(a, b)]
        if others:
            assignment = dict(data.assignment)
            assignment[a] = rng.choice(others)
            out.append(RetractData(data.direction, data.domain, data.codomain, assignment))
            break
    return out


# small monoids (elements, product, unit) used as hom-sets of random target categories
MONOIDS = {
    "Z1": ((0,), lambda s, t: 0, 0),
    "Z2": ((0, 1), lambda s, t: (s + t) % 2, 0),
    "Z3": ((0, 1, 2), lambda s, t: (s + t) % 3, 0),
    "max2": ((0, 1), max, 0),
    "max3": ((0, 1, 2), max, 0),
    "min3": ((0, 1, 2), min, 2),
    "mul2": ((0, 1), lambda s, t: s * t, 1),
    "mul3": ((0, 1, 2), lambda s, t: (s * t) % 3, 1),
}


def random_target_category(rng: random.Random, max_objects: int = 4):
    """A poset on 1..max_objects objects whose non-trivial hom-sets are a small monoid M.

    hom(x, y) = {x} x {y} x M for x < y; hom(x, x) is M when `loops` is drawn, else {unit}.
    Composition multiplies labels, so the category is lawful by construction.
    """
    n = rng.randint(1, max_objects)
    name = rng.choice(sorted(MONOIDS))
    elems, op, unit = MONOIDS[name]
    loops = rng.random() < 0.3
    less = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.6}
    changed = True
    while changed:  # transitive closure
        extra = {(i, k) for i, j in less for j2, k in less if j == j2} - less
        changed = bool(extra)
        less |= extra
    homs = {}
    for i in range(n):
        homs[(i, i)] = [(i, i, s) for s in (elems if loops else (unit,))]
    for i, j in sorted(less):
        homs[(i, j)] = [(i, j, s) for s in elems]
    table = {}
    for (a, b), fs in homs.items():
        for c in range(n):
            for f in fs:
                for g in homs.get((b, c), ()):
                    table[(f, g)] = (a, c, op(f[2], g[2]))
    return ExplicitCategory(tuple(range(n)), homs, table, {i: (i, i, unit) for i in range(n)})
