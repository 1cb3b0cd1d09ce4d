"""Future and past retracts of a finite category onto a full subcategory.

A future retract of B onto A chooses for every x in B an object x+ in A and a morphism
gamma_x: x -> x+ such that precomposition with gamma_x is a bijection
hom(x+, a) -> hom(x, a) for every a in A, with gamma_a the identity on A.
Past retracts are future retracts of the opposite category, and are computed that way.

Hom-sets of glued scenes can be infinite. By default every check refuses to run on a
truncated hom-set. Passing `up_to_length=N` instead runs the length-graded check:
morphisms are dihomotopy classes, whose length is well defined and additive, so the
bijection must restrict to classes of length <= N on the right and <= N - |gamma_x| on
the left. That is a necessary condition only, and reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Literal

from .category import FiniteCategory
from .errors import InexactHomSet

Direction = Literal["future", "past"]


@dataclass
class RetractData:
    direction: str
    domain: tuple  # objects of B
    codomain: tuple  # objects of A, a subset of B
    assignment: dict  # x -> (x_p, gamma_x)

    def __post_init__(self):
        if self.direction not in ("future", "past"):
            raise ValueError(f"direction must be 'future' or 'past', not {self.direction!r}")
        self.domain = tuple(self.domain)
        self.codomain = tuple(self.codomain)

    def target(self, x):
        return self.assignment[x][0]

    def gamma(self, x):
        return self.assignment[x][1]


@dataclass
class RetractReport:
    ok: bool
    exact: bool
    failures: list = field(default_factory=list)  # (x, a, reason)
    graded_up_to: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def oriented(table: FiniteCategory, direction: str) -> FiniteCategory:
    """The category on which a retract of this direction is a future retract."""
    return table if direction == "future" else table.opposite()


def _length(f) -> int:
    return getattr(f, "length", 0)


def _graded(fs, bound):
    return fs if bound is None else [f for f in fs if _length(f) <= bound]


def _require_exact(cat: FiniteCategory, pairs: Iterable[tuple], up_to_length: int | None) -> bool:
    pairs = list(pairs)
    bad = [p for p in pairs if not cat.exact(*p)]
    if bad and up_to_length is None:
        raise InexactHomSet(
            f"{len(bad)} hom-sets are truncated; refusing to decide the retract", pairs=[repr(p) for p in bad[:5]]
        )
    if up_to_length is not None:
        budget = getattr(cat, "budget", None)
        if budget is not None and budget.max_steps < up_to_length:
            raise InexactHomSet("table bound is below the requested graded length", bound=budget.max_steps)
    return not bad


def precomposition_failure(cat: FiniteCategory, x, xp, gamma, a, up_to_length: int | None = None) -> str | None:
    """None if g -> gamma;g is a bijection hom(xp, a) -> hom(x, a), else a witness string."""
    right = _graded(cat.hom(x, a), up_to_length)
    bound = None if up_to_length is None else up_to_length - _length(gamma)
    left = _graded(cat.hom(xp, a), bound) if bound is None or bound >= 0 else []
    images = {}
    for g in left:
        img = cat.compose(gamma, g)
        if img in images:
            return f"not injective: {images[img]!r} and {g!r} give the same composite"
        images[img] = g
    missing = [f for f in right if f not in images]
    if missing:
        return f"not surjective: {missing[0]!r} does not factor through gamma"
    return None


def verify_retract(table: FiniteCategory, data: RetractData, up_to_length: int | None = None) -> RetractReport:
    cat = oriented(table, data.direction)
    A, B = data.codomain, data.domain
    failures = []
    if not set(A) <= set(B):
        failures.append((None, None, "codomain is not a subset of the domain"))
    missing = [x for x in B if x not in data.assignment]
    failures.extend((x, None, "no assignment") for x in missing)
    if failures:
        return RetractReport(False, True, failures)
    pairs = [(x, a) for x in B for a in A] + [(data.target(x), a) for x in B for a in A]
    exact = _require_exact(cat, pairs, up_to_length)
    A_set = set(A)
    for x in B:
        xp, gamma = data.assignment[x]
        if xp not in A_set:
            failures.append((x, None, f"target {xp!r} is not in the codomain"))
            continue
        if cat.src(gamma) != x or cat.dst(gamma) != xp:
            failures.append((x, None, "gamma has the wrong endpoints"))
            continue
        if x in A_set and (xp != x or gamma != cat.identity(x)):
            failures.append((x, x, "points of the codomain must map to themselves by the identity"))
            continue
        for a in A:
            why = precomposition_failure(cat, x, xp, gamma, a, up_to_length)
            if why:
                failures.append((x, a, why))
    return RetractReport(not failures, exact and up_to_length is None, failures, up_to_length)


def find_retract(
    table: FiniteCategory, A: Iterable, direction: str = "future", up_to_length: int | None = None, domain=None
) -> RetractData | None:
    """Search a retract of `domain` (default: all objects of the table) onto A.

    Candidates (a0, g0) are tried in the order of A and of the hom lists; the first
    one satisfying the bijection criterion for every a in A wins.
    """
    cat = oriented(table, direction)
    A = tuple(A)
    B = tuple(domain) if domain is not None else tuple(table.objects)
    pairs = [(x, a) for x in B for a in A] + [(a0, a) for a0 in A for a in A]
    _require_exact(cat, pairs, up_to_length)
    if not set(A) <= set(B):
        raise ValueError("codomain of a retract must be a subset of its domain")
    A_set = set(A)
    assignment = {}
    for x in B:
        if x in A_set:
            assignment[x] = (x, cat.identity(x))
            continue
        choice = None
        for a0 in A:
            for g0 in _graded(cat.hom(x, a0), up_to_length):
                if all(precomposition_failure(cat, x, a0, g0, a, up_to_length) is None for a in A):
                    choice = (a0, g0)
                    break
            if choice:
                break
        if choice is None:
            return None
        assignment[x] = choice
    return RetractData(direction, B, A, assignment)


def identity_retract(table: FiniteCategory, direction: str = "future") -> RetractData:
    objs = tuple(table.objects)
    return RetractData(direction, objs, objs, {x: (x, table.identity(x)) for x in objs})


@dataclass
class InducedFunctor:
    """The functor B -> A of a retract, x -> x_p, f -> the fill-in of the unit square.

    `mor[f]` is None when the square has no fill-in (only possible for bad data).
    """

    data: RetractData
    obj: dict
    mor: dict
    up_to_length: int | None = None

    def __call__(self, f):
        return self.mor[f]


def _fill_in(cat: FiniteCategory, data: RetractData, f, up_to_length=None):
    x, y = cat.src(f), cat.dst(f)
    (xp, gx), (yp, gy) = data.assignment[x], data.assignment[y]
    goal = cat.compose(f, gy)
    bound = None if up_to_length is None else _length(goal) - _length(gx)
    for h in cat.hom(xp, yp):
        if bound is not None and _length(h) != bound:
            continue
        if cat.compose(gx, h) == goal:
            return h
    return None


def induced_functor(data: RetractData, table: FiniteCategory, up_to_length: int | None = None) -> InducedFunctor:
    cat = oriented(table, data.direction)
    mor = {}
    for x, y in product(data.domain, repeat=2):
        for f in _graded(cat.hom(x, y), up_to_length):
            mor[f] = _fill_in(cat, data, f, up_to_length)
    obj = {x: data.target(x) for x in data.domain}
    return InducedFunctor(data, obj, mor, up_to_length)


def adjunction_failures(functor: InducedFunctor, table: FiniteCategory, limit: int = 20) -> list[str]:
    """Everything that stops (P, gamma, identity) from being a reflection of B onto A."""
    data = functor.data
    cat = oriented(table, data.direction)
    N = functor.up_to_length
    A = set(data.codomain)
    B = data.domain
    out: list[str] = []

    def fail(msg):
        out.append(msg)
        return len(out) >= limit

    for f, pf in functor.mor.items():
        if pf is None:
            if fail(f"no fill-in for {f!r}"):
                return out
    if out:
        return out
    # naturality of the unit
    for f, pf in functor.mor.items():
        x, y = cat.src(f), cat.dst(f)
        if cat.compose(data.gamma(x), pf) != cat.compose(f, data.gamma(y)):
            if fail(f"unit not natural at {f!r}"):
                return out
    # counit is the identity: P restricted to A is the identity functor
    for a in A:
        if functor.obj[a] != a:
            if fail(f"P moves {a!r}"):
                return out
    for f, pf in functor.mor.items():
        if cat.src(f) in A and cat.dst(f) in A and pf != f:
            if fail(f"P is not the identity on {f!r}"):
                return out
    # triangle identities
    for x in B:
        gx = data.gamma(x)
        if x in A and gx != cat.identity(x):
            if fail(f"unit at {x!r} is not the identity"):
                return out
        pg = functor.mor.get(gx)
        if pg is not None and pg != cat.identity(functor.obj[x]):
            if fail(f"P(gamma_{x!r}) is not the identity"):
                return out
    # functoriality
    for x in B:
        if functor.mor.get(cat.identity(x), cat.identity(functor.obj[x])) != cat.identity(functor.obj[x]):
            if fail(f"P does not preserve the identity of {x!r}"):
                return out
    for x, y in product(B, repeat=2):
        fs = _graded(cat.hom(x, y), N)
        if not fs:
            continue
        for z in B:
            for f in fs:
                for g in _graded(cat.hom(y, z), N):
                    fg = cat.compose(f, g)
                    if fg not in functor.mor:
                        continue  # beyond the graded bound
                    if functor.mor[fg] != cat.compose(functor.mor[f], functor.mor[g]):
                        if fail(f"P not functorial on {f!r};{g!r}"):
                            return out
    return out


def check_adjunction(functor: InducedFunctor, table: FiniteCategory) -> bool:
    return not adjunction_failures(functor, table, limit=1)


def apply_retract(table: FiniteCategory, data: RetractData) -> FiniteCategory:
    """The codomain table of a retract step."""
    return table.restrict(data.codomain)
