"""DOT and SVG emitters. Both are plain string builders with deterministic output."""

from __future__ import annotations

from itertools import product

from .category import FiniteCategory, ext_points
from .grid import GridComplex
from .scene import fmt


def _quote(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def quiver_dot(cat: FiniteCategory, label=str, name: str = "quiver", generators_only: bool = False) -> str:
    """One node per object, one edge per non-identity morphism (or per indecomposable)."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for x in cat.objects:
        lines.append(f"  {_quote(label(x))};")
    if generators_only:
        gens = cat.indecomposables()
        edges = [(a, b, len(gens.get((a, b), ()))) for a, b in product(cat.objects, repeat=2)]
    else:
        edges = [(a, b, len(cat.non_identities(a, b))) for a, b in product(cat.objects, repeat=2)]
    for a, b, n in edges:
        for k in range(n):
            lines.append(f"  {_quote(label(a))} -> {_quote(label(b))} [key={k}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def bipartite_dot(cat: FiniteCategory, label=str) -> str:
    return quiver_dot(cat, label, name="bipartite")


def presentation_dot(pres, label=str) -> str:
    lines = ["digraph pushout {", "  rankdir=LR;", "  node [shape=circle];"]
    for x in pres.objects:
        lines.append(f"  {_quote(label(x))};")
    for g in pres.generators:
        lines.append(f"  {_quote(label(g.source))} -> {_quote(label(g.target))} [label={_quote(g.name)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


PALETTE = ("#c0392b", "#2471a3", "#229954", "#b9770e", "#7d3c98", "#17a589")


def scene_svg(grid: GridComplex, paths=(), size: int = 400, margin: int = 30) -> str:
    """Ambient square, forbidden boxes, extremal and marked points, and the given paths.

    Only 2D scenes are drawn; the y axis points up as in the usual pictures.
    """
    scene = grid.scene
    if scene.dim != 2:
        raise ValueError("SVG rendering needs a 2D scene")
    total = size + 2 * margin

    def X(x):
        return f"{margin + float(x) * size:.2f}"

    def Y(y):
        return f"{margin + (1 - float(y)) * size:.2f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">',
        f'<rect x="{margin}" y="{margin}" width="{size}" height="{size}" fill="#dddddd" stroke="black"/>',
    ]
    for (xlo, xhi), (ylo, yhi) in scene.forbidden:
        out.append(
            f'<rect x="{X(xlo)}" y="{Y(yhi)}" width="{float(xhi - xlo) * size:.2f}" '
            f'height="{float(yhi - ylo) * size:.2f}" fill="white" stroke="black"/>'
        )
    for ident in scene.identifications:
        for c in (ident.source, ident.target):
            if ident.axis == 0:
                out.append(f'<line x1="{X(c)}" y1="{Y(0)}" x2="{X(c)}" y2="{Y(1)}" stroke="green" stroke-dasharray="4"/>')
            else:
                out.append(f'<line x1="{X(0)}" y1="{Y(c)}" x2="{X(1)}" y2="{Y(c)}" stroke="green" stroke-dasharray="4"/>')
    for k, path in enumerate(paths):
        colour = PALETTE[k % len(PALETTE)]
        for run in _runs(grid, path):
            pts = " ".join(f"{X(p[0])},{Y(p[1])}" for p in run)
            out.append(f'<polyline points="{pts}" fill="none" stroke="{colour}" stroke-width="2"/>')
    marked = {grid.vertex_coords(v) for v in ext_points(grid)}
    for p in sorted(marked):
        out.append(f'<circle cx="{X(p[0])}" cy="{Y(p[1])}" r="4" fill="black"/>')
    for name, p in scene.marked_points:
        out.append(f'<circle cx="{X(p[0])}" cy="{Y(p[1])}" r="3" fill="blue"/>')
        out.append(
            f'<text x="{float(X(p[0])) + 6:.2f}" y="{float(Y(p[1])) - 6:.2f}" font-size="12">{name}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _runs(grid: GridComplex, path) -> list[list[tuple]]:
    """Coordinate runs along a path, split where it jumps across a glued hyperplane."""
    runs = [[grid.vertex_coords(path.start)]]
    for idx, axis in path.edges:
        tail = grid.position(idx)
        head = grid.position(tuple(i + (a == axis) for a, i in enumerate(idx)))
        if tail != runs[-1][-1]:
            runs.append([tail])
        runs[-1].append(head)
    return runs


def point_label(p) -> str:
    return "(" + ",".join(fmt(c) for c in p) + ")"
