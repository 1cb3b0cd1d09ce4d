"""Monotone lattice paths and their dihomotopy classes under elementary flips.

Two routes to the classes between two vertices:

* `classes` enumerates every path up to the step bound and closes the set under flips
  with a union-find. It is simple and serves as the reference implementation.
* `ClassEngine` builds the classes of all paths leaving one source layer by layer
  (a class of length L+1 is a class of length L plus one edge, modulo the flips of the
  last two edges). It never lists paths, so it is what hom-tables use.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from networkx.utils import UnionFind

from .errors import BudgetExceeded, NotTwoDimensional
from .grid import Edge, GridComplex, Vertex


@dataclass(frozen=True)
class Budget:
    max_paths: int = 200_000
    max_steps: int = 64

    def __post_init__(self):
        if self.max_paths < 1 or self.max_steps < 0:
            raise ValueError("budget bounds must be positive")


@dataclass(frozen=True)
class LatticePath:
    """A start vertex and a sequence of canonical grid edges, each leaving the previous head."""

    start: Vertex
    edges: tuple[Edge, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def steps(self) -> tuple[int, ...]:
        return tuple(e[1] for e in self.edges)

    def key(self) -> tuple:
        """Shortlex order: length first, then (axis, lower index) step by step."""
        return (len(self.edges), tuple((e[1], e[0]) for e in self.edges))

    def then(self, other: "LatticePath") -> "LatticePath":
        return LatticePath(self.start, self.edges + other.edges)

    def end(self, grid: GridComplex) -> Vertex:
        return grid.head(self.edges[-1]) if self.edges else self.start

    def vertices(self, grid: GridComplex) -> list[Vertex]:
        out = [self.start]
        for e in self.edges:
            out.append(grid.head(e))
        return out

    def is_valid(self, grid: GridComplex) -> bool:
        if self.start not in grid.vertices:
            return False
        here = self.start
        for e in self.edges:
            ends = grid.edges.get(e)
            if ends is None or ends[0] != here:
                return False
            here = ends[1]
        return True

    def segment(self, i: int, j: int, grid: GridComplex) -> "LatticePath":
        start = self.start if i == 0 else grid.head(self.edges[i - 1])
        return LatticePath(start, self.edges[i:j])


def path_from_steps(grid: GridComplex, start: Vertex, steps: Iterable[int]) -> LatticePath:
    """Build a path from axis steps; only unambiguous away from glued hyperplanes."""
    edges = []
    here = start
    for axis in steps:
        options = [e for e in grid.out_edges[here] if e[1] == axis]
        if len(options) != 1:
            raise ValueError(f"step along axis {axis} from {here} is {'ambiguous' if options else 'not allowed'}")
        edges.append(options[0])
        here = grid.head(options[0])
    return LatticePath(start, tuple(edges))


@dataclass(frozen=True)
class DihomotopyClass:
    """Class of dipaths source -> target, identified by its least representative."""

    source: Vertex
    target: Vertex
    canonical: LatticePath
    members: frozenset | None = field(default=None, compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.canonical)

    def is_identity(self) -> bool:
        return not self.canonical.edges

    def sort_key(self) -> tuple:
        return self.canonical.key()


def identity_class(v: Vertex) -> DihomotopyClass:
    return DihomotopyClass(v, v, LatticePath(v))


def flip(grid: GridComplex, path: LatticePath, i: int) -> LatticePath | None:
    if not 0 <= i < len(path.edges) - 1:
        raise IndexError(f"no step pair at position {i}")
    pair = grid.flip_map.get((path.edges[i], path.edges[i + 1]))
    if pair is None:
        return None
    edges = path.edges[:i] + pair + path.edges[i + 2 :]
    return LatticePath(path.start, edges)


def _bump_recursion(n: int) -> None:
    if sys.getrecursionlimit() < n + 200:
        sys.setrecursionlimit(n + 1000)


def enumerate_dipaths(
    grid: GridComplex, u: Vertex, v: Vertex, budget: Budget = Budget(), truncate: bool = False
) -> list[LatticePath]:
    """All dipaths u -> v with at most max_steps edges, in shortlex order.

    Raises BudgetExceeded when more than max_paths paths exist, unless `truncate`
    is set, in which case the first max_paths found are returned.
    """
    targets = grid.reaching(v)
    if u not in targets:
        return []
    found: list[tuple[Edge, ...]] = []
    stack: list[Edge] = []

    def dfs(w: Vertex) -> bool:
        if w == v:
            if len(found) >= budget.max_paths:
                if truncate:
                    return False
                raise BudgetExceeded(
                    f"more than {budget.max_paths} dipaths", max_paths=budget.max_paths, max_steps=budget.max_steps
                )
            found.append(tuple(stack))
        if len(stack) == budget.max_steps:
            return True
        for e in grid.out_edges[w]:
            h = grid.head(e)
            if h in targets:
                stack.append(e)
                ok = dfs(h)
                stack.pop()
                if not ok:
                    return False
        return True

    _bump_recursion(budget.max_steps)
    dfs(u)
    paths = [LatticePath(u, es) for es in found]
    paths.sort(key=LatticePath.key)
    return paths


def is_exact(grid: GridComplex, u: Vertex, v: Vertex, max_steps: int) -> bool:
    """True iff every dipath u -> v has at most max_steps edges (so nothing was cut off)."""
    return grid.longest_path_length(u, v) <= max_steps


def classes(grid: GridComplex, u: Vertex, v: Vertex, budget: Budget = Budget()) -> list[DihomotopyClass]:
    """Partition of the enumerated dipaths u -> v under flips, sorted by representative."""
    paths = enumerate_dipaths(grid, u, v, budget)
    uf = UnionFind(paths)
    index = set(paths)
    for p in paths:
        for i in range(len(p.edges) - 1):
            q = flip(grid, p, i)
            if q is not None and q in index:
                uf.union(p, q)
    out = []
    for group in uf.to_sets():
        group = frozenset(group)
        rep = min(group, key=LatticePath.key)
        out.append(DihomotopyClass(u, v, rep, group))
    out.sort(key=DihomotopyClass.sort_key)
    return out


def classes_exact(grid: GridComplex, u: Vertex, v: Vertex, budget: Budget = Budget()) -> bool:
    return is_exact(grid, u, v, budget.max_steps)


def signature_2d(grid: GridComplex, path: LatticePath) -> tuple[int, ...]:
    """Per forbidden box: 1 if the path passes above it, 0 if below or never beside it."""
    scene = grid.scene
    if scene.dim != 2 or scene.identifications:
        raise NotTwoDimensional("signature oracle needs a 2D scene without identifications", dim=scene.dim)
    points = [grid.vertex_coords(w) for w in path.vertices(grid)]
    bits = []
    for (xlo, xhi), (ylo, yhi) in scene.forbidden:
        m = (xlo + xhi) / 2
        bit = 0
        for p, q in zip(points, points[1:] or points):
            if p[0] <= m <= q[0]:
                bit = int(p[1] >= yhi)
                break
        else:
            if len(points) == 1 and points[0][0] == m:
                bit = int(points[0][1] >= yhi)
        bits.append(bit)
    return tuple(bits)


class ClassEngine:
    """Dihomotopy classes of all dipaths leaving `source`, grown one length at a time.

    Class ids are dense integers. Layer L holds the classes of paths of length L.
    """

    def __init__(self, grid: GridComplex, source: Vertex, budget: Budget = Budget()):
        if source not in grid.vertices:
            raise KeyError(f"{source} is not a vertex")
        self.grid = grid
        self.source = source
        self.budget = budget
        self.end: list[Vertex] = [source]
        self.canon: list[tuple[Edge, ...]] = [()]
        self.layer_of: list[int] = [0]
        self.layers: list[list[int]] = [[0]]
        self.ext: dict[tuple[int, Edge], int] = {}
        self.by_canon: dict[tuple[Edge, ...], int] = {(): 0}
        self._at: list[dict[Vertex, list[int]]] = [{source: [0]}]

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    def grow(self) -> bool:
        """Build the next layer; False if it is empty (no longer paths exist)."""
        g = self.grid
        L = self.depth
        cur = self.layers[L]
        if not cur:
            return False
        pairs = [(c, e) for c in cur for e in g.out_edges[self.end[c]]]
        uf = UnionFind(pairs)
        if L >= 1:
            for w, cs in self._at[L - 1].items():
                for f in g.faces_by_corner.get(w, ()):
                    for c in cs:
                        uf.union((self.ext[(c, f.bottom)], f.right), (self.ext[(c, f.left)], f.top))
        new_layer: list[int] = []
        at: dict[Vertex, list[int]] = {}
        keyed = []
        for grp in uf.to_sets():
            grp = list(grp)
            rep = min((self.canon[c] + (e,) for c, e in grp), key=_edges_key)
            keyed.append((_edges_key(rep), rep, grp))
        keyed.sort(key=lambda t: t[0])
        if len(keyed) > self.budget.max_paths:
            raise BudgetExceeded(
                f"more than {self.budget.max_paths} classes of length {L + 1}",
                max_paths=self.budget.max_paths,
                max_steps=self.budget.max_steps,
            )
        for _, rep, grp in keyed:
            cid = len(self.end)
            head = g.head(rep[-1])
            self.end.append(head)
            self.canon.append(rep)
            self.layer_of.append(L + 1)
            self.by_canon[rep] = cid
            new_layer.append(cid)
            at.setdefault(head, []).append(cid)
            for pair in grp:
                self.ext[pair] = cid
        self.layers.append(new_layer)
        self._at.append(at)
        return bool(new_layer)

    def ensure(self, depth: int) -> None:
        while self.depth < depth and self.layers[-1]:
            self.grow()

    def classify_edges(self, edges: Iterable[Edge], start: int = 0) -> int:
        cid = start
        for e in edges:
            key = (cid, e)
            if key not in self.ext:
                self.ensure(self.layer_of[cid] + 1)
                if key not in self.ext:
                    raise ValueError(f"edge {e} does not leave the end of class {cid}")
            cid = self.ext[key]
        return cid

    def classify(self, path: LatticePath) -> int:
        if path.start != self.source:
            raise ValueError("path does not start at the engine source")
        return self.classify_edges(path.edges)

    def class_of(self, cid: int) -> DihomotopyClass:
        return DihomotopyClass(self.source, self.end[cid], LatticePath(self.source, self.canon[cid]))

    def id_of(self, cls: DihomotopyClass) -> int:
        cid = self.by_canon.get(cls.canonical.edges)
        if cid is None:
            cid = self.classify(cls.canonical)
        return cid

    def classes_to(self, v: Vertex, max_steps: int) -> list[DihomotopyClass]:
        self.ensure(max_steps)
        out = []
        for L in range(min(max_steps, self.depth) + 1):
            out.extend(self.class_of(c) for c in self._at[L].get(v, ()))
        out.sort(key=DihomotopyClass.sort_key)
        return out

    def iter_classes(self, max_steps: int) -> Iterator[DihomotopyClass]:
        self.ensure(max_steps)
        for L in range(min(max_steps, self.depth) + 1):
            for c in self.layers[L]:
                yield self.class_of(c)


def _edges_key(edges: tuple[Edge, ...]) -> tuple:
    return tuple((e[1], e[0]) for e in edges)
