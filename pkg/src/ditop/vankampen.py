"""Van Kampen for fundamental categories: covers, path decomposition, pushout presentations,
and gluing of retracts, retract chains and extremal models along a two-piece cover.

A piece is a union of closed axis-aligned windows in the unrolled coordinates of a scene
(a glued hyperplane belongs to a piece if either of its two unrolled copies does). Pieces
are sub-complexes of one global grid, so vertex ids, edge ids and canonical paths are
shared by the pieces, their overlap and the whole space.

Pushout presentations take the indecomposable classes of the two piece tables as
generators. Each generator weighs its grid length, and every relation is
weight-homogeneous, so the congruence on words of a fixed weight is generated inside that
weight: closure up to a weight bound is exact for each weight below the bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from networkx.utils import UnionFind

from .category import ExplicitCategory, FiniteCategory, HomTable, ext_points, full_subcategory
from .dipaths import Budget, DihomotopyClass, LatticePath
from .errors import CoverInvalid, InclusionNotFunctorial, IncompatibleRetracts
from .grid import GridComplex, compactify
from .models import RetractChain, verify_extremal_model
from .retracts import RetractData, oriented, verify_retract
from .scene import CubicalScene, rational

Window = tuple[tuple[Fraction, Fraction], ...]


def _window(box) -> Window:
    return tuple((rational(lo), rational(hi)) for lo, hi in box)


@dataclass
class Cover:
    grid: GridComplex
    windows1: tuple[Window, ...]
    windows2: tuple[Window, ...]
    A1: tuple
    A2: tuple
    B1: tuple | None = None
    B2: tuple | None = None
    pieces: dict = field(default_factory=dict, repr=False)

    @property
    def A0(self) -> tuple:
        s2 = set(self.A2)
        return tuple(x for x in self.A1 if x in s2)

    @property
    def A(self) -> tuple:
        return tuple(sorted(set(self.A1) | set(self.A2)))

    @property
    def B0(self) -> tuple | None:
        if self.B1 is None or self.B2 is None:
            return None
        s2 = set(self.B2)
        return tuple(x for x in self.B1 if x in s2)

    def piece(self, k: int) -> GridComplex:
        return self.pieces[k]

    def edge_in(self, k: int, e) -> bool:
        return e in self.pieces[k].edges

    def face_in(self, k: int, face) -> bool:
        return face in self._faces[k]

    @property
    def _faces(self) -> dict:
        if "_faces" not in self.__dict__:
            self.__dict__["_faces"] = {k: {f.face for f in g.faces} for k, g in self.pieces.items()}
        return self.__dict__["_faces"]


def _in_windows(point, windows) -> bool:
    return any(all(lo <= c <= hi for c, (lo, hi) in zip(point, w)) for w in windows)


def _segment_in(grid: GridComplex, idx, spanned, windows) -> bool:
    """Is the closed cell with lower corner idx spanning the given axes inside one window?"""
    for rep in grid.representatives(idx, fixed=spanned):
        lo = grid.position(rep)
        hi = grid.position(tuple(i + (a in spanned) for a, i in enumerate(rep)))
        for w in windows:
            if all(l >= wl and h <= wh for l, h, (wl, wh) in zip(lo, hi, w)):
                return True
    return False


def piece_complex(grid: GridComplex, windows) -> GridComplex:
    return grid.subcomplex(
        lambda v: _segment_in(grid, v, (), windows),
        lambda e: _segment_in(grid, e[0], (e[1],), windows),
        lambda f: _segment_in(grid, f[0], (f[1], f[2]), windows),
    )


def make_cover(
    scene: CubicalScene,
    windows1: Iterable,
    windows2: Iterable,
    A1: Sequence[str],
    A2: Sequence[str],
    B1: Sequence[str] | None = None,
    B2: Sequence[str] | None = None,
    grid: GridComplex | None = None,
) -> Cover:
    """Cover of a scene by two unions of closed windows, with object sets given by point names.

    The grid is refined with every window coordinate so the pieces are sub-complexes.
    """
    w1 = tuple(_window(b) for b in windows1)
    w2 = tuple(_window(b) for b in windows2)
    if grid is None:
        refine: dict[int, set] = {a: set() for a in range(scene.dim)}
        for w in w1 + w2:
            for a, (lo, hi) in enumerate(w):
                refine[a].update((lo, hi))
        grid = compactify(scene, refine)
    names = lambda seq: None if seq is None else tuple(sorted({grid.named(n) for n in seq}))  # noqa: E731
    cover = Cover(grid, w1, w2, names(A1), names(A2), names(B1), names(B2))
    cover.pieces = {1: piece_complex(grid, w1), 2: piece_complex(grid, w2)}
    g1, g2 = cover.pieces[1], cover.pieces[2]
    cover.pieces[0] = grid.subcomplex(
        lambda v: v in g1.vertices and v in g2.vertices,
        lambda e: e in g1.edges and e in g2.edges,
        lambda f: cover.face_in(1, f) and cover.face_in(2, f),
    )
    validate_cover(cover)
    return cover


def validate_cover(cover: Cover) -> Cover:
    g = cover.grid
    g1, g2 = cover.pieces[1], cover.pieces[2]
    for e in sorted(g.edges, key=g.edge_key):
        if e not in g1.edges and e not in g2.edges:
            raise CoverInvalid(f"edge {e} lies in neither piece", edge=repr(e))
    for f in g.faces:
        if not cover.face_in(1, f.face) and not cover.face_in(2, f.face):
            raise CoverInvalid(f"2-face {f.face} lies in neither piece", face=repr(f.face))
    for k, objs, bobjs in ((1, cover.A1, cover.B1), (2, cover.A2, cover.B2)):
        verts = cover.pieces[k].vertices
        for x in objs:
            if x not in verts:
                raise CoverInvalid(f"object {g.label(x)} is not in piece {k}", piece=k)
        if bobjs is not None:
            if not set(objs) <= set(bobjs):
                raise CoverInvalid(f"A{k} is not contained in B{k}", piece=k)
            for x in bobjs:
                if x not in verts:
                    raise CoverInvalid(f"object {g.label(x)} of B{k} is not in piece {k}", piece=k)
    return cover


def decompose_path(cover: Cover, path: LatticePath) -> list[tuple[LatticePath, int]]:
    """Maximal segments, each inside one piece; piece 1 wins whenever both contain an edge."""
    g = cover.grid
    out: list[tuple[LatticePath, int]] = []
    start = 0
    label = None
    for i, e in enumerate(path.edges):
        in1, in2 = cover.edge_in(1, e), cover.edge_in(2, e)
        if not (in1 or in2):
            raise CoverInvalid(f"edge {e} lies in neither piece", edge=repr(e))
        if label is None:
            label = 1 if in1 else 2
        elif not (in1 if label == 1 else in2):
            out.append((path.segment(start, i, g), label))
            start, label = i, (1 if in1 else 2)
    if label is None:
        return [(LatticePath(path.start), 1)]
    out.append((path.segment(start, len(path.edges), g), label))
    return out


# presentations


@dataclass(frozen=True)
class Generator:
    name: str
    source: object
    target: object
    piece: int
    cls: DihomotopyClass
    weight: int


@dataclass
class CatPresentation:
    objects: tuple
    generators: list[Generator]
    relations: list[tuple[tuple[int, ...], tuple[int, ...]]]
    embed: dict = field(default_factory=dict, repr=False)  # (piece, class) -> word
    label: object = None

    def out_generators(self, a) -> list[int]:
        return [i for i, g in enumerate(self.generators) if g.source == a]

    def word_end(self, a, word) -> object:
        return self.generators[word[-1]].target if word else a

    def weight(self, word) -> int:
        return sum(self.generators[i].weight for i in word)

    def word_str(self, word) -> str:
        return "*".join(self.generators[i].name for i in word) or "id"


def canonical_words(table: FiniteCategory, gens: dict) -> dict:
    """A word in indecomposables for every stored class (left-greedy factorisation)."""
    index = {f: (f,) for fs in gens.values() for f in fs}
    out: dict = {}

    def word(c):
        if c in out:
            return out[c]
        if table.is_identity(c):
            out[c] = ()
            return ()
        if c in index:
            out[c] = index[c]
            return out[c]
        a, z = table.src(c), table.dst(c)
        for (s, b), fs in gens.items():
            if s != a:
                continue
            for f in fs:
                for g in table.hom(b, z):
                    if not table.is_identity(g) and table.compose(f, g) == c:
                        out[c] = (f,) + word(g)
                        return out[c]
        raise InclusionNotFunctorial(f"class {c!r} is not a composite of indecomposables")

    for a, b in product(table.objects, repeat=2):
        for c in table.hom(a, b):
            word(c)
    return out


def _check_inclusion(T0: HomTable, Tk: HomTable, k: int):
    g0, gk = T0.grid, Tk.grid
    missing = [e for e in g0.edges if e not in gk.edges]
    if missing:
        raise InclusionNotFunctorial(f"overlap edge {missing[0]} is not in piece {k}", piece=k)
    faces_k = {f.face for f in gk.faces}
    missing = [f.face for f in g0.faces if f.face not in faces_k]
    if missing:
        raise InclusionNotFunctorial(f"overlap 2-face {missing[0]} is not in piece {k}", piece=k)
    extra = [x for x in T0.objects if x not in set(Tk.objects)]
    if extra:
        raise InclusionNotFunctorial(f"overlap object {extra[0]} is not an object of piece {k}", piece=k)


def pushout_presentation(T1: HomTable, T2: HomTable, T0: HomTable) -> CatPresentation:
    _check_inclusion(T0, T1, 1)
    _check_inclusion(T0, T2, 2)
    label = getattr(T1, "label", str)
    gens: list[Generator] = []
    gid: dict = {}
    words: dict = {}
    for k, T in ((1, T1), (2, T2)):
        ind = T.indecomposables()
        keyed = sorted(
            ((a, b, f) for (a, b), fs in ind.items() for f in fs), key=lambda t: (t[0], t[1], t[2].sort_key())
        )
        for a, b, f in keyed:
            n = sum(1 for g in gens if g.piece == k and g.source == a and g.target == b)
            gid[(k, f)] = len(gens)
            gens.append(Generator(f"{label(a)}>{label(b)}#{k}.{n}", a, b, k, f, f.length))
        cw = canonical_words(T, ind)
        for c, w in cw.items():
            words[(k, c)] = tuple(gid[(k, f)] for f in w)
    relations = []
    for k, T in ((1, T1), (2, T2)):
        for g in [g for g in gens if g.piece == k]:
            for z in T.objects:
                for r in T.hom(g.target, z):
                    if T.is_identity(r):
                        continue
                    comp = (k, T.compose(g.cls, r))
                    if comp not in words:
                        continue  # longer than the length budget of a cyclic piece
                    lhs = (gid[(k, g.cls)],) + words[(k, r)]
                    rhs = words[comp]
                    if lhs != rhs:
                        relations.append((lhs, rhs))
    ind0 = T0.indecomposables()
    for (a, b), hs in sorted(ind0.items()):
        for h in hs:
            w1 = words[(1, T1.classify(h.canonical))]
            w2 = words[(2, T2.classify(h.canonical))]
            if w1 != w2:
                relations.append((w1, w2))
    objects = tuple(sorted(set(T1.objects) | set(T2.objects)))
    return CatPresentation(objects, gens, sorted(set(relations)), words, label)


def _route_bound(pres: CatPresentation, a, b) -> float:
    """Largest weight of a word a -> b; inf when a generator cycle lies on some route."""
    out = {x: [] for x in pres.objects}
    for i, g in enumerate(pres.generators):
        out[g.source].append(g)
    reach = {}
    for x in pres.objects:
        seen, stack = {x}, [x]
        while stack:
            y = stack.pop()
            for g in out[y]:
                if g.target not in seen:
                    seen.add(g.target)
                    stack.append(g.target)
        reach[x] = seen
    if b not in reach[a]:
        return 0
    relevant = {x for x in reach[a] if b in reach[x]}
    for x in relevant:
        for g in out[x]:
            if g.target in relevant and x in reach[g.target]:
                return float("inf")
    memo = {}

    def longest(x):
        if x in memo:
            return memo[x]
        best = 0 if x == b else -1
        for g in out[x]:
            if g.target in relevant:
                sub = longest(g.target)
                if sub >= 0:
                    best = max(best, g.weight + sub)
        memo[x] = best
        return best

    return longest(a)


def _words(pres: CatPresentation, a, b, max_weight: int) -> list[tuple[int, ...]]:
    found = []
    stack = [(a, (), 0)]
    while stack:
        x, w, wt = stack.pop()
        if x == b:
            found.append(w)
        for i in pres.out_generators(x):
            g = pres.generators[i]
            if wt + g.weight <= max_weight:
                stack.append((g.target, w + (i,), wt + g.weight))
    found.sort(key=lambda w: (pres.weight(w), len(w), w))
    return found


def _rewrites(word, relations):
    for lhs, rhs in relations:
        for src, dst in ((lhs, rhs), (rhs, lhs)):
            n = len(src)
            if n == 0:
                continue
            for i in range(len(word) - n + 1):
                if word[i : i + n] == src:
                    yield word[:i] + dst + word[i + n :]


def hom_from_presentation(
    pres: CatPresentation, a, b, max_len: int, grading: str = "weight"
) -> tuple[list[list[tuple[int, ...]]], bool]:
    """Classes of words a -> b under the relation congruence, each a sorted list of words.

    grading="weight": all words of grid length <= max_len (exact per weight).
    grading="words": classes meeting some word of at most max_len generators.
    The flag is True when no word a -> b was left out by the bound.
    """
    if grading == "weight":
        bound = max_len
    elif grading == "words":
        short = [w for w in _words(pres, a, b, 10**9) if len(w) <= max_len] if _route_bound(pres, a, b) < float("inf") else None
        if short is None:
            bound = max_len * max((g.weight for g in pres.generators), default=0)
        else:
            bound = max((pres.weight(w) for w in short), default=0)
    else:
        raise ValueError(f"unknown grading {grading!r}")
    words = _words(pres, a, b, bound)
    uf = UnionFind(words)
    present = set(words)
    for w in words:
        for v in _rewrites(w, pres.relations):
            if v in present:
                uf.union(w, v)
    groups = [sorted(s, key=lambda w: (pres.weight(w), len(w), w)) for s in uf.to_sets()]
    if grading == "words":
        groups = [grp for grp in groups if any(len(w) <= max_len for w in grp)]
    groups.sort(key=lambda grp: (pres.weight(grp[0]), len(grp[0]), grp[0]))
    exact = _route_bound(pres, a, b) <= bound if grading == "weight" else _route_bound(pres, a, b) < float("inf")
    return groups, exact


def word_path(pres: CatPresentation, a, word) -> LatticePath:
    edges = ()
    for i in word:
        edges += pres.generators[i].cls.canonical.edges
    return LatticePath(a, edges)


def presentation_category(pres: CatPresentation, max_len: int) -> ExplicitCategory:
    """The pushout as an explicit category; morphisms are (a, b, least word) triples."""
    homs, rep = {}, {}
    for a, b in product(pres.objects, repeat=2):
        groups, exact = hom_from_presentation(pres, a, b, max_len)
        if not exact:
            raise InclusionNotFunctorial(f"hom({a},{b}) of the pushout is infinite or beyond the bound")
        ms = []
        for grp in groups:
            m = (a, b, grp[0])
            ms.append(m)
            for w in grp:
                rep[(a, w)] = m
        if ms:
            homs[(a, b)] = ms
    table = {}
    for (a, b), fs in homs.items():
        for c in pres.objects:
            for f in fs:
                for g in homs.get((b, c), ()):
                    table[(f, g)] = rep[(a, f[2] + g[2])]
    ids = {a: (a, a, ()) for a in pres.objects}
    return ExplicitCategory(pres.objects, homs, table, ids)


def piece_functor(pres: CatPresentation, k: int, Tk: FiniteCategory, max_len: int) -> dict:
    """j_k on morphisms: class of piece k -> morphism of `presentation_category`."""
    cat_rep = {}
    for a, b in product(Tk.objects, repeat=2):
        groups, _ = hom_from_presentation(pres, a, b, max_len)
        for grp in groups:
            for w in grp:
                cat_rep[(a, w)] = (a, b, grp[0])
    return {c: cat_rep[(Tk.src(c), pres.embed[(k, c)])] for a, b in product(Tk.objects, repeat=2) for c in Tk.hom(a, b)}


# verification against the glued space


@dataclass
class PushoutReport:
    ok: bool
    exact: bool
    pairs: dict = field(default_factory=dict)  # (a, b) -> dict(presented, direct, exact, ok)
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def piece_tables(cover: Cover, budget: Budget = Budget(), level: str = "A") -> tuple[HomTable, HomTable, HomTable]:
    objs1 = cover.A1 if level == "A" else cover.B1
    objs2 = cover.A2 if level == "A" else cover.B2
    objs0 = tuple(x for x in objs1 if x in set(objs2))
    return (
        HomTable(cover.pieces[1], objs1, budget),
        HomTable(cover.pieces[2], objs2, budget),
        HomTable(cover.pieces[0], objs0, budget),
    )


def verify_pushout(cover: Cover, budget: Budget = Budget(), max_len: int | None = None) -> PushoutReport:
    """Compare the pushout presentation with the directly computed table of the glued space."""
    max_len = budget.max_steps if max_len is None else max_len
    T1, T2, T0 = piece_tables(cover, budget)
    pres = pushout_presentation(T1, T2, T0)
    direct = full_subcategory(cover.grid, cover.A, budget)
    report = PushoutReport(True, True)
    for a, b in product(cover.A, repeat=2):
        groups, pexact = hom_from_presentation(pres, a, b, max_len)
        dexact = cover.grid.longest_path_length(a, b) <= max_len
        dclasses = [c for c in direct.hom(a, b) if c.length <= max_len]
        images = []
        for grp in groups:
            vals = {direct.classify(word_path(pres, a, w)) for w in grp}
            if len(vals) != 1:
                report.problems.append(f"{direct.label(a)}->{direct.label(b)}: equivalent words reach different classes")
            images.append(next(iter(vals)))
        injective = len(set(images)) == len(images)
        surjective = set(dclasses) <= set(images)
        exact = pexact and dexact
        ok = injective and surjective and (not exact or len(images) == len(dclasses))
        if not injective:
            report.problems.append(f"{direct.label(a)}->{direct.label(b)}: two word classes give the same class")
        if not surjective:
            report.problems.append(f"{direct.label(a)}->{direct.label(b)}: a class has no word")
        report.pairs[(a, b)] = dict(presented=len(groups), direct=len(dclasses), exact=exact, ok=ok)
        report.exact &= exact
    report.ok = not report.problems
    return report


def check_iota(cover: Cover, budget: Budget = Budget(), max_len: int | None = None) -> bool:
    """The A-level pushout maps into the B-level one compatibly with evaluation in X (F' = F iota)."""
    if cover.B1 is None or cover.B2 is None:
        raise CoverInvalid("the cover has no B-level object sets")
    max_len = budget.max_steps if max_len is None else max_len
    pa = pushout_presentation(*piece_tables(cover, budget, "A"))
    pb = pushout_presentation(*piece_tables(cover, budget, "B"))
    direct = full_subcategory(cover.grid, set(cover.B1) | set(cover.B2), budget)
    tb = {k: HomTable(cover.pieces[k], cover.B1 if k == 1 else cover.B2, budget) for k in (1, 2)}
    for a, b in product(cover.A, repeat=2):
        groups, _ = hom_from_presentation(pa, a, b, max_len)
        for grp in groups:
            for w in grp:
                iw = ()
                for i in w:
                    g = pa.generators[i]
                    iw += pb.embed[(g.piece, tb[g.piece].classify(g.cls.canonical))]
                if direct.classify(word_path(pa, a, w)) != direct.classify(word_path(pb, a, iw)):
                    return False
    return True


# gluing retracts


def _x_class(table: HomTable, f: DihomotopyClass) -> DihomotopyClass:
    return table.classify(f.canonical)


def pushout_retract(
    data1: RetractData, data2: RetractData, data0: RetractData | None, cover: Cover, budget: Budget = Budget()
) -> RetractData:
    """Glue retracts of the two pieces into a retract of the glued table on B1 u B2."""
    if data1.direction != data2.direction or (data0 is not None and data0.direction != data1.direction):
        raise IncompatibleRetracts("pieces retract in different directions")
    X = full_subcategory(cover.grid, set(data1.domain) | set(data2.domain), budget)
    B0 = [x for x in data1.domain if x in set(data2.domain)]
    for x in B0:
        t1, t2 = data1.target(x), data2.target(x)
        if t1 != t2:
            raise IncompatibleRetracts(
                f"{X.label(x)} goes to {X.label(t1)} in piece 1 but to {X.label(t2)} in piece 2", point=X.label(x)
            )
        g1, g2 = _x_class(X, data1.gamma(x)), _x_class(X, data2.gamma(x))
        if g1 != g2:
            raise IncompatibleRetracts(f"the unit at {X.label(x)} differs between the pieces", point=X.label(x))
        if data0 is not None and x in data0.assignment:
            if data0.target(x) != t1 or _x_class(X, data0.gamma(x)) != g1:
                raise IncompatibleRetracts(f"the overlap retract disagrees at {X.label(x)}", point=X.label(x))
    if data0 is not None:
        _check_overlap_functors(data1, data2, data0, cover, X, budget)
    assignment = {}
    for x in sorted(set(data1.domain) | set(data2.domain)):
        data = data1 if x in data1.assignment else data2
        assignment[x] = (data.target(x), _x_class(X, data.gamma(x)))
    A = tuple(sorted(set(data1.codomain) | set(data2.codomain)))
    return RetractData(data1.direction, tuple(sorted(assignment)), A, assignment)


def _check_overlap_functors(data1, data2, data0, cover, X, budget):
    """P1 and P2 agree, as classes of X, on every class of the overlap table on B0."""
    from .retracts import induced_functor

    N = budget.max_steps
    tables = {k: HomTable(cover.pieces[k], d.domain, budget) for k, d in ((1, data1), (2, data2), (0, data0))}
    loops = any(tables[k].grid.has_cycles for k in tables)
    graded = N if loops else None
    funcs = {k: induced_functor(d, tables[k], graded) for k, d in ((1, data1), (2, data2))}
    cat0 = oriented(tables[0], data0.direction)
    for x, y in product(data0.domain, repeat=2):
        for f in cat0.hom(x, y):
            if graded is not None and f.length > N:
                continue
            images = []
            for k in (1, 2):
                fk = tables[k].classify(f.canonical)
                pf = funcs[k].mor.get(fk)
                if pf is None:
                    break
                images.append(_x_class(X, pf))
            if len(images) == 2 and images[0] != images[1]:
                raise IncompatibleRetracts(f"P1 and P2 disagree on a class {X.label(x)} -> {X.label(y)}")


def pushout_chain(
    chain1: RetractChain, chain2: RetractChain, chain0: RetractChain | None, cover: Cover, budget: Budget = Budget()
) -> RetractChain:
    if len(chain1.steps) != len(chain2.steps) or (chain0 is not None and len(chain0.steps) != len(chain1.steps)):
        raise IncompatibleRetracts("chains have different lengths")
    steps = []
    for k, (s1, s2) in enumerate(zip(chain1.steps, chain2.steps)):
        s0 = chain0.steps[k] if chain0 is not None else None
        steps.append(pushout_retract(s1, s2, s0, cover, budget))
    base = full_subcategory(cover.grid, set(chain1.base.objects) | set(chain2.base.objects), budget)
    return RetractChain(base, steps)


@dataclass
class GluedModelReport:
    ok: bool
    chain: RetractChain
    piece_reports: dict
    glued_steps: list
    ext_ok: bool
    graded_up_to: int | None
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def pushout_extremal_model(
    model1: RetractChain, model2: RetractChain, model0: RetractChain | None, cover: Cover, budget: Budget = Budget()
) -> GluedModelReport:
    """Glue compatible extremal models and check the result is an extremal model of X.

    Tables with directed cycles are checked with the length-graded criterion up to the
    budget's step bound; the report records that bound.
    """
    problems = []
    graded = budget.max_steps if cover.grid.has_cycles else None
    piece_reports = {}
    for k, m in ((1, model1), (2, model2), (0, model0)):
        if m is None:
            continue
        pg = cover.pieces[k]
        rep = verify_extremal_model(pg, m, budget.max_steps if pg.has_cycles else None)
        piece_reports[k] = rep
        if not rep.ok:
            problems.append(f"piece {k} model fails: {rep.problems[0]}")
    chain = pushout_chain(model1, model2, model0, cover, budget)
    glued = []
    for k, step in enumerate(chain.steps):
        rep = verify_retract(chain.base.restrict(step.domain), step, graded)
        glued.append(rep)
        if not rep.ok:
            problems.append(f"glued step {k} fails: {rep.failures[0][2]}")
    ext_ok = set(ext_points(cover.grid)) <= set(chain.final_A)
    if not ext_ok:
        problems.append("an extremal point of X is missing from the glued object set")
    return GluedModelReport(not problems, chain, piece_reports, glued, ext_ok, graded, problems)
