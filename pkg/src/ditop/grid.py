"""Coordinate compaction of a cubical scene into a finite directed cell complex.

Vertices, edges and 2-faces are indexed by positions in the per-axis coordinate lists.
An identification on an axis merges index `t` into index `s` for every cell that lies
inside the glued hyperplane; cells that cross it keep their own lower index, so the
edges (s, s+1) and (t, t+1) stay distinct and leave the same merged vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Mapping

from .scene import CubicalScene, Point, validate_scene

Index = tuple[int, ...]
Vertex = Index
Edge = tuple[Index, int]  # (lower corner, axis)
Face = tuple[Index, int, int]  # (lower corner, axis i, axis j) with i < j


@dataclass(frozen=True)
class FaceEdges:
    """The four edges of an allowed 2-face: bottom, right, left, top (a square b.rt == l.t)."""

    face: Face
    bottom: Edge
    right: Edge
    left: Edge
    top: Edge


@dataclass(eq=False)
class GridComplex:
    scene: CubicalScene
    coords: tuple[tuple[Fraction, ...], ...]
    glue: dict[int, tuple[int, int]]  # axis -> (source index, target index)
    vertices: frozenset
    edges: dict  # canonical edge -> (tail vertex, head vertex)
    faces: tuple[FaceEdges, ...]
    cells: frozenset  # allowed top-dimensional cells (lower corners)
    forbidden_cells: frozenset
    parent: "GridComplex | None" = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def shape(self) -> tuple[int, ...]:
        """Number of cells along each axis of the unrolled grid."""
        return tuple(len(c) - 1 for c in self.coords)

    # canonical forms

    def canon_coord(self, axis: int, i: int) -> int:
        g = self.glue.get(axis)
        if g is not None and i == g[1]:
            return g[0]
        return i

    def canon_vertex(self, idx: Iterable[int]) -> Vertex:
        return tuple(self.canon_coord(a, i) for a, i in enumerate(idx))

    def canon_edge(self, idx: Index, axis: int) -> Edge:
        return (tuple(i if a == axis else self.canon_coord(a, i) for a, i in enumerate(idx)), axis)

    def canon_face(self, idx: Index, i: int, j: int) -> Face:
        return (tuple(k if a in (i, j) else self.canon_coord(a, k) for a, k in enumerate(idx)), i, j)

    def representatives(self, idx: Index, fixed: Iterable[int] = ()) -> list[Index]:
        """All unrolled index tuples naming the same position (axes in `fixed` are not varied)."""
        options = []
        fixed = set(fixed)
        for a, i in enumerate(idx):
            g = self.glue.get(a)
            if a not in fixed and g is not None and i == g[0]:
                options.append((g[0], g[1]))
            else:
                options.append((i,))
        return [tuple(p) for p in product(*options)]

    # geometry

    def position(self, idx: Index) -> Point:
        return tuple(self.coords[a][i] for a, i in enumerate(idx))

    def vertex_coords(self, v: Vertex) -> Point:
        return self.position(v)

    def vertex_at(self, point: Iterable) -> Vertex:
        point = tuple(Fraction(c) for c in point)
        try:
            idx = tuple(self.coords[a].index(c) for a, c in enumerate(point))
        except ValueError as exc:
            raise KeyError(f"{point} is not a grid vertex") from exc
        v = self.canon_vertex(idx)
        if v not in self.vertices:
            raise KeyError(f"{point} is not an allowed vertex of this complex")
        return v

    def named(self, name: str) -> Vertex:
        return self.vertex_at(self.scene.point(name))

    @cached_property
    def names(self) -> dict[Vertex, str]:
        """Marked-point name of each vertex that carries one (first name wins)."""
        out: dict[Vertex, str] = {}
        for name, p in self.scene.marked_points:
            try:
                v = self.vertex_at(p)
            except KeyError:
                continue
            out.setdefault(v, name)
        return out

    def label(self, v: Vertex) -> str:
        from .scene import fmt

        return self.names.get(v) or "(" + ",".join(fmt(c) for c in self.vertex_coords(v)) + ")"

    def edge_key(self, e: Edge) -> tuple:
        return (e[1], e[0])

    def edge_midpoint(self, e: Edge) -> Point:
        idx, axis = e
        return tuple(
            (self.coords[a][i] + self.coords[a][i + 1]) / 2 if a == axis else self.coords[a][i]
            for a, i in enumerate(idx)
        )

    # adjacency

    @cached_property
    def out_edges(self) -> dict[Vertex, tuple[Edge, ...]]:
        out: dict[Vertex, list[Edge]] = {v: [] for v in self.vertices}
        for e, (tail, _) in self.edges.items():
            out[tail].append(e)
        return {v: tuple(sorted(es, key=self.edge_key)) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict[Vertex, tuple[Edge, ...]]:
        inn: dict[Vertex, list[Edge]] = {v: [] for v in self.vertices}
        for e, (_, head) in self.edges.items():
            inn[head].append(e)
        return {v: tuple(sorted(es, key=self.edge_key)) for v, es in inn.items()}

    @cached_property
    def flip_map(self) -> dict[tuple[Edge, Edge], tuple[Edge, Edge]]:
        table: dict[tuple[Edge, Edge], tuple[Edge, Edge]] = {}
        for f in self.faces:
            table[(f.bottom, f.right)] = (f.left, f.top)
            table[(f.left, f.top)] = (f.bottom, f.right)
        return table

    @cached_property
    def faces_by_corner(self) -> dict[Vertex, tuple[FaceEdges, ...]]:
        out: dict[Vertex, list[FaceEdges]] = {}
        for f in self.faces:
            out.setdefault(self.edges[f.bottom][0], []).append(f)
        return {v: tuple(fs) for v, fs in out.items()}

    def tail(self, e: Edge) -> Vertex:
        return self.edges[e][0]

    def head(self, e: Edge) -> Vertex:
        return self.edges[e][1]

    @cached_property
    def _reach(self) -> dict[Vertex, frozenset]:
        succ = {v: {self.head(e) for e in self.out_edges[v]} for v in self.vertices}
        reach = {}
        for v in self.vertices:
            seen = {v}
            stack = [v]
            while stack:
                w = stack.pop()
                for u in succ[w]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            reach[v] = frozenset(seen)
        return reach

    def reachable_from(self, v: Vertex) -> frozenset:
        return self._reach[v]

    @cached_property
    def _coreach(self) -> dict[Vertex, frozenset]:
        co: dict[Vertex, set] = {v: set() for v in self.vertices}
        for v, targets in self._reach.items():
            for w in targets:
                co[w].add(v)
        return {v: frozenset(s) for v, s in co.items()}

    def reaching(self, v: Vertex) -> frozenset:
        return self._coreach[v]

    @cached_property
    def cyclic_vertices(self) -> frozenset:
        """Vertices lying on some directed cycle (a loop edge counts)."""
        out = set()
        for v in self.vertices:
            for e in self.out_edges[v]:
                if v in self._reach[self.head(e)]:
                    out.add(v)
                    break
        return frozenset(out)

    @property
    def has_cycles(self) -> bool:
        return bool(self.cyclic_vertices)

    def longest_path_length(self, u: Vertex, v: Vertex) -> float:
        """Length of the longest dipath u -> v: -1 if none, inf if unbounded."""
        if v not in self._reach[u]:
            return -1
        relevant = self._reach[u] & self._coreach[v]
        if relevant & self.cyclic_vertices:
            return float("inf")
        memo: dict[Vertex, int] = {}

        def longest(w: Vertex) -> int:
            if w == v:
                return 0
            if w in memo:
                return memo[w]
            best = -1
            for e in self.out_edges[w]:
                h = self.head(e)
                if h in relevant:
                    best = max(best, 1 + longest(h))
            memo[w] = best
            return best

        import sys

        limit = sys.getrecursionlimit()
        if len(relevant) + 100 > limit:
            sys.setrecursionlimit(len(relevant) + 1000)
        return longest(u)

    # sub-complexes

    def subcomplex(
        self,
        vertex_ok: Callable[[Vertex], bool],
        edge_ok: Callable[[Edge], bool],
        face_ok: Callable[[Face], bool],
    ) -> "GridComplex":
        vertices = frozenset(v for v in self.vertices if vertex_ok(v))
        edges = {e: ends for e, ends in self.edges.items() if edge_ok(e) and ends[0] in vertices and ends[1] in vertices}
        faces = tuple(
            f for f in self.faces if face_ok(f.face) and all(x in edges for x in (f.bottom, f.right, f.left, f.top))
        )
        return GridComplex(
            scene=self.scene,
            coords=self.coords,
            glue=self.glue,
            vertices=vertices,
            edges=edges,
            faces=faces,
            cells=self.cells,
            forbidden_cells=self.forbidden_cells,
            parent=self,
        )

    def digraph(self):
        """networkx MultiDiGraph of allowed vertices and edges (edge key = canonical edge)."""
        import networkx as nx

        g = nx.MultiDiGraph()
        g.add_nodes_from(sorted(self.vertices))
        for e, (tail, head) in sorted(self.edges.items(), key=lambda kv: self.edge_key(kv[0])):
            g.add_edge(tail, head, key=e)
        return g


def compactify(scene: CubicalScene, refine: Mapping[int, Iterable] | None = None) -> GridComplex:
    """Compile a scene to its grid complex.

    Grid lines on each axis: 0, 1, every box endpoint, glued coordinates, marked-point
    coordinates, plus any extra coordinates in `refine` (axis -> values).
    """
    validate_scene(scene)
    dim = scene.dim
    axes: list[set[Fraction]] = [{Fraction(0), Fraction(1)} for _ in range(dim)]
    for box in scene.forbidden:
        for a, (lo, hi) in enumerate(box):
            axes[a].update((lo, hi))
    for ident in scene.identifications:
        axes[ident.axis].update((ident.source, ident.target))
    for _, p in scene.marked_points:
        for a, c in enumerate(p):
            axes[a].add(c)
    for a, values in (refine or {}).items():
        for c in values:
            c = Fraction(c)
            if 0 <= c <= 1:
                axes[a].add(c)
    coords = tuple(tuple(sorted(s)) for s in axes)
    glue = {i.axis: (coords[i.axis].index(i.source), coords[i.axis].index(i.target)) for i in scene.identifications}
    sizes = [len(c) for c in coords]

    proto = GridComplex(scene, coords, glue, frozenset(), {}, (), frozenset(), frozenset())

    def mid(idx: Index, spanned: tuple[int, ...]) -> Point:
        return tuple(
            (coords[a][i] + coords[a][i + 1]) / 2 if a in spanned else coords[a][i] for a, i in enumerate(idx)
        )

    vertices = set()
    edges: dict[Edge, tuple[Vertex, Vertex]] = {}
    faces: dict[Face, FaceEdges] = {}
    cells, bad_cells = set(), set()
    for idx in product(*(range(n) for n in sizes)):
        if scene.is_forbidden(proto.position(idx)):
            continue
        vertices.add(proto.canon_vertex(idx))
        for a in range(dim):
            if idx[a] + 1 >= sizes[a]:
                continue
            if scene.is_forbidden(mid(idx, (a,))):
                continue
            e = proto.canon_edge(idx, a)
            up = tuple(i + (b == a) for b, i in enumerate(idx))
            edges[e] = (proto.canon_vertex(idx), proto.canon_vertex(up))
        for i in range(dim):
            for j in range(i + 1, dim):
                if idx[i] + 1 >= sizes[i] or idx[j] + 1 >= sizes[j]:
                    continue
                if scene.is_forbidden(mid(idx, (i, j))):
                    continue
                key = proto.canon_face(idx, i, j)
                if key in faces:
                    continue
                step_i = tuple(k + (b == i) for b, k in enumerate(idx))
                step_j = tuple(k + (b == j) for b, k in enumerate(idx))
                faces[key] = FaceEdges(
                    face=key,
                    bottom=proto.canon_edge(idx, i),
                    right=proto.canon_edge(step_i, j),
                    left=proto.canon_edge(idx, j),
                    top=proto.canon_edge(step_j, i),
                )
        if all(idx[a] + 1 < sizes[a] for a in range(dim)):
            (bad_cells if scene.is_forbidden(mid(idx, tuple(range(dim)))) else cells).add(idx)
    return GridComplex(
        scene=scene,
        coords=coords,
        glue=glue,
        vertices=frozenset(vertices),
        edges=edges,
        faces=tuple(faces[k] for k in sorted(faces)),
        cells=frozenset(cells),
        forbidden_cells=frozenset(bad_cells),
    )
