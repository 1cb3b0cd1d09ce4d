"""Finite categories: fundamental-category hom-tables and small explicit categories.

All categorical algorithms in the package talk to the `FiniteCategory` interface:
objects, hom lists, composition, identities, source/target of a morphism and a
per-hom-set exactness flag. `compose(f, g)` is "f then g", i.e. g∘f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Mapping, Sequence

from .dipaths import Budget, ClassEngine, DihomotopyClass, identity_class, is_exact
from .errors import BudgetExceeded
from .grid import GridComplex, Vertex


class FiniteCategory:
    objects: tuple

    def hom(self, a, b) -> list:
        raise NotImplementedError

    def compose(self, f, g):
        raise NotImplementedError

    def identity(self, a):
        raise NotImplementedError

    def src(self, f):
        raise NotImplementedError

    def dst(self, f):
        raise NotImplementedError

    def exact(self, a, b) -> bool:
        return True

    def is_identity(self, f) -> bool:
        return f == self.identity(self.src(f))

    # derived structure

    def all_exact(self, pairs: Iterable[tuple] | None = None) -> bool:
        pairs = pairs if pairs is not None else product(self.objects, repeat=2)
        return all(self.exact(a, b) for a, b in pairs)

    def inexact_pairs(self) -> list[tuple]:
        return [(a, b) for a, b in product(self.objects, repeat=2) if not self.exact(a, b)]

    def le(self, a, b) -> bool:
        return bool(self.hom(a, b))

    def extremal(self) -> tuple[frozenset, frozenset]:
        """Minimal and maximal objects of the preorder 'some morphism a -> b'."""
        mins = frozenset(a for a in self.objects if not any(x != a and self.le(x, a) for x in self.objects))
        maxs = frozenset(b for b in self.objects if not any(x != b and self.le(b, x) for x in self.objects))
        return mins, maxs

    def ext(self) -> frozenset:
        mins, maxs = self.extremal()
        return mins | maxs

    def morphisms(self) -> list:
        return [f for a, b in product(self.objects, repeat=2) for f in self.hom(a, b)]

    def non_identities(self, a, b) -> list:
        return [f for f in self.hom(a, b) if not self.is_identity(f)]

    def indecomposables(self) -> dict[tuple, list]:
        """Non-identity morphisms that are not a composite of two non-identity morphisms."""
        composite = set()
        objs = self.objects
        for a, b in product(objs, repeat=2):
            fs = self.non_identities(a, b)
            if not fs:
                continue
            for c in objs:
                for f in fs:
                    for g in self.non_identities(b, c):
                        composite.add(self.compose(f, g))
        return {
            (a, b): [f for f in self.non_identities(a, b) if f not in composite]
            for a, b in product(objs, repeat=2)
            if self.non_identities(a, b)
        }

    def generator_counts(self) -> dict[tuple, int]:
        return {k: len(v) for k, v in self.indecomposables().items() if v}

    def restrict(self, objects: Iterable) -> "FiniteCategory":
        return SubCategory(self, objects)

    def opposite(self) -> "FiniteCategory":
        return Opposite(self)

    def counts(self) -> dict[tuple, int]:
        return {(a, b): len(self.hom(a, b)) for a, b in product(self.objects, repeat=2)}


class SubCategory(FiniteCategory):
    """Full subcategory on a subset of objects (same morphisms and composition)."""

    def __init__(self, base: FiniteCategory, objects: Iterable):
        objects = tuple(objects)
        missing = [x for x in objects if x not in set(base.objects)]
        if missing:
            raise KeyError(f"objects not in the category: {missing}")
        self.base = base
        self.objects = objects

    def hom(self, a, b):
        return self.base.hom(a, b)

    def compose(self, f, g):
        return self.base.compose(f, g)

    def identity(self, a):
        return self.base.identity(a)

    def src(self, f):
        return self.base.src(f)

    def dst(self, f):
        return self.base.dst(f)

    def exact(self, a, b):
        return self.base.exact(a, b)

    def restrict(self, objects):
        return SubCategory(self.base, objects)

    def __getattr__(self, name):
        # grid-level helpers (label, grid, ...) are forwarded to the ambient table
        return getattr(self.base, name)


class Opposite(FiniteCategory):
    def __init__(self, base: FiniteCategory):
        self.base = base
        self.objects = base.objects

    def hom(self, a, b):
        return self.base.hom(b, a)

    def compose(self, f, g):
        return self.base.compose(g, f)

    def identity(self, a):
        return self.base.identity(a)

    def src(self, f):
        return self.base.dst(f)

    def dst(self, f):
        return self.base.src(f)

    def exact(self, a, b):
        return self.base.exact(b, a)

    def restrict(self, objects):
        return Opposite(self.base.restrict(objects))

    def opposite(self):
        return self.base

    def __getattr__(self, name):
        return getattr(self.base, name)


class HomTable(FiniteCategory):
    """The full subcategory of the fundamental category of a grid on a vertex set.

    Hom lists are computed lazily per pair by a `ClassEngine` per source vertex and
    memoized; composition concatenates canonical representatives and re-classifies.
    Engines are shared by restrictions, so sub-tables cost nothing extra.
    """

    def __init__(self, grid: GridComplex, objects: Iterable[Vertex], budget: Budget = Budget(), _shared=None):
        self.grid = grid
        self.objects = tuple(objects)
        bad = [v for v in self.objects if v not in grid.vertices]
        if bad:
            raise KeyError(f"not vertices of the grid: {bad}")
        self.budget = budget
        self._shared = _shared if _shared is not None else {"engines": {}, "hom": {}, "exact": {}, "comp": {}}

    # engine plumbing

    def engine(self, u: Vertex) -> ClassEngine:
        engines = self._shared["engines"]
        if u not in engines:
            engines[u] = ClassEngine(self.grid, u, self.budget)
        return engines[u]

    def hom(self, a: Vertex, b: Vertex) -> list[DihomotopyClass]:
        memo = self._shared["hom"]
        key = (a, b)
        if key not in memo:
            exact = is_exact(self.grid, a, b, self.budget.max_steps)
            if b not in self.grid.reachable_from(a):
                memo[key] = []
            else:
                eng = self.engine(a)
                try:
                    memo[key] = eng.classes_to(b, self.budget.max_steps)
                except BudgetExceeded:
                    exact = False
                    memo[key] = eng.classes_to(b, eng.depth)
            self._shared["exact"][key] = exact
        return memo[key]

    def exact(self, a, b) -> bool:
        if (a, b) not in self._shared["exact"]:
            self.hom(a, b)
        return self._shared["exact"][(a, b)]

    def compose(self, f: DihomotopyClass, g: DihomotopyClass) -> DihomotopyClass:
        if f.target != g.source:
            raise ValueError(f"cannot compose {f.source}->{f.target} with {g.source}->{g.target}")
        memo = self._shared["comp"]
        key = (f, g)
        out = memo.get(key)
        if out is None:
            eng = self.engine(f.source)
            cid = eng.classify_edges(g.canonical.edges, start=eng.id_of(f))
            out = eng.class_of(cid)
            memo[key] = out
        return out

    def identity(self, a):
        return identity_class(a)

    def src(self, f):
        return f.source

    def dst(self, f):
        return f.target

    def is_identity(self, f) -> bool:
        return f.is_identity()

    def classify(self, path) -> DihomotopyClass:
        eng = self.engine(path.start)
        return eng.class_of(eng.classify(path))

    def restrict(self, objects: Iterable[Vertex]) -> "HomTable":
        return HomTable(self.grid, objects, self.budget, self._shared)

    def label(self, v: Vertex) -> str:
        return self.grid.label(v)


@dataclass
class ExplicitCategory(FiniteCategory):
    """A category given by tables. Morphisms are hashable tokens.

    `homs[(a, b)]` lists the morphisms a -> b (identities included) and `table[(f, g)]`
    is the composite f then g.
    """

    objects: tuple
    homs: dict
    table: dict
    ids: dict
    ends: dict = field(default_factory=dict)

    def __post_init__(self):
        self.objects = tuple(self.objects)
        if not self.ends:
            self.ends = {f: (a, b) for (a, b), fs in self.homs.items() for f in fs}

    def hom(self, a, b):
        return self.homs.get((a, b), [])

    def compose(self, f, g):
        return self.table[(f, g)]

    def identity(self, a):
        return self.ids[a]

    def src(self, f):
        return self.ends[f][0]

    def dst(self, f):
        return self.ends[f][1]

    def check_axioms(self) -> list[str]:
        """Violations of closure, unit and associativity laws (empty list when lawful)."""
        problems = []
        for a in self.objects:
            if self.ids[a] not in self.hom(a, a):
                problems.append(f"identity of {a!r} missing")
        for (a, b), fs in self.homs.items():
            for f in fs:
                if self.compose(self.ids[a], f) != f or self.compose(f, self.ids[b]) != f:
                    problems.append(f"unit law fails at {f!r}")
                for c in self.objects:
                    for g in self.hom(b, c):
                        if self.compose(f, g) not in self.hom(a, c):
                            problems.append(f"{f!r};{g!r} leaves hom({a!r},{c!r})")
                            continue
                        for d in self.objects:
                            for h in self.hom(c, d):
                                if self.compose(self.compose(f, g), h) != self.compose(f, self.compose(g, h)):
                                    problems.append(f"associativity fails at {f!r},{g!r},{h!r}")
        return problems


def materialize(cat: FiniteCategory) -> ExplicitCategory:
    """Copy a category with exact hom-sets into explicit tables."""
    homs = {(a, b): list(cat.hom(a, b)) for a, b in product(cat.objects, repeat=2) if cat.hom(a, b)}
    table = {}
    for (a, b), fs in homs.items():
        for c in cat.objects:
            for f in fs:
                for g in homs.get((b, c), ()):
                    table[(f, g)] = cat.compose(f, g)
    ids = {a: cat.identity(a) for a in cat.objects}
    return ExplicitCategory(cat.objects, homs, table, ids)


# grid-level notions


@dataclass(frozen=True)
class Preorder:
    grid: GridComplex

    def le(self, x: Vertex, y: Vertex) -> bool:
        return y in self.grid.reachable_from(x)

    def is_antisymmetric(self) -> bool:
        return not self.grid.has_cycles


def preorder(grid: GridComplex) -> Preorder:
    return Preorder(grid)


def extremal_points(grid: GridComplex) -> tuple[frozenset, frozenset]:
    """Minimal and maximal points. A vertex with an incoming edge (a loop included) has
    strict predecessors on that edge's open segment, so minimal means in-degree zero."""
    mins = frozenset(v for v in grid.vertices if not grid.in_edges[v])
    maxs = frozenset(v for v in grid.vertices if not grid.out_edges[v])
    return mins, maxs


def ext_points(grid: GridComplex) -> frozenset:
    mins, maxs = extremal_points(grid)
    return mins | maxs


def full_subcategory(grid: GridComplex, objects: Iterable[Vertex], budget: Budget = Budget()) -> HomTable:
    return HomTable(grid, sorted(set(objects)), budget)


def bipartite_graph(grid: GridComplex, budget: Budget = Budget()) -> HomTable:
    return full_subcategory(grid, ext_points(grid), budget)


def quiver_edges(cat: FiniteCategory, generators_only: bool = False) -> list[tuple]:
    """(source, target, morphism) per non-identity morphism, or per indecomposable."""
    if generators_only:
        gens = cat.indecomposables()
        return [(a, b, f) for (a, b), fs in sorted(gens.items(), key=_pair_key) for f in fs]
    out = []
    for a, b in product(cat.objects, repeat=2):
        out.extend((a, b, f) for f in cat.non_identities(a, b))
    return out


def _pair_key(item):
    return repr(item[0])


def count_table(cat: FiniteCategory, label=None) -> dict[str, int]:
    """Non-identity hom counts keyed 'a->b', for reports and tests."""
    label = label or (lambda x: str(x))
    return {
        f"{label(a)}->{label(b)}": len(cat.non_identities(a, b))
        for a, b in product(cat.objects, repeat=2)
        if cat.non_identities(a, b)
    }


def named_objects(grid: GridComplex, names: Sequence[str] | Mapping) -> list[Vertex]:
    return [grid.named(n) for n in names]


def functors(src: FiniteCategory, dst: FiniteCategory):
    """Every functor src -> dst between categories with exact hom-sets.

    Yields (object map, morphism map). Candidates are fixed by the images of the
    indecomposables and then checked on every composable pair.
    """
    gens = [f for fs in src.indecomposables().values() for f in fs]
    # every morphism as a word in indecomposables: peel one generator off the front
    words: dict = {}
    for a in src.objects:
        words[src.identity(a)] = ()
    for f in gens:
        words[f] = (f,)
    pending = [f for f in src.morphisms() if f not in words]
    while pending:
        rest = []
        for c in pending:
            for g in gens:
                if src.src(g) != src.src(c):
                    continue
                tail = next((h for h in words if src.src(h) == src.dst(g) and src.dst(h) == src.dst(c)
                             and src.compose(g, h) == c), None)
                if tail is not None:
                    words[c] = (g,) + words[tail]
                    break
            else:
                rest.append(c)
        if len(rest) == len(pending):
            raise ValueError("category is not generated by its indecomposables")
        pending = rest
    objs = list(src.objects)
    for images in product(dst.objects, repeat=len(objs)):
        obj = dict(zip(objs, images))
        choices = [dst.hom(obj[src.src(g)], obj[src.dst(g)]) for g in gens]
        if any(not c for c in choices):
            continue
        for picked in product(*choices):
            on_gen = dict(zip(gens, picked))
            mor = {}
            for c, w in words.items():
                m = dst.identity(obj[src.src(c)])
                for g in w:
                    m = dst.compose(m, on_gen[g])
                mor[c] = m
            if all(
                mor[src.compose(f, g)] == dst.compose(mor[f], mor[g])
                for f in mor
                for b in src.objects
                if src.dst(f) == b
                for c in src.objects
                for g in src.hom(b, c)
            ):
                yield obj, mor
