"""Extremal models: chains of future and past retracts ending on a set that holds Ext(X)."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .category import FiniteCategory, HomTable, ext_points, full_subcategory
from .dipaths import Budget
from .errors import NotAPospace, SubsetBudgetExceeded
from .grid import GridComplex
from .retracts import RetractData, RetractReport, find_retract, verify_retract


@dataclass
class RetractChain:
    base: FiniteCategory
    steps: list[RetractData] = field(default_factory=list)

    @property
    def final_A(self) -> tuple:
        return self.steps[-1].codomain if self.steps else tuple(self.base.objects)

    def table(self, k: int | None = None) -> FiniteCategory:
        """Table after k steps (the final one by default)."""
        k = len(self.steps) if k is None else k
        objs = self.steps[k - 1].codomain if k else tuple(self.base.objects)
        return self.base.restrict(objs)

    def final_table(self) -> FiniteCategory:
        return self.table()

    def directions(self) -> list[str]:
        return [s.direction for s in self.steps]


@dataclass
class ModelReport:
    ok: bool
    exact: bool
    step_reports: list[RetractReport]
    missing_extremal: list
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def verify_chain(chain: RetractChain, up_to_length: int | None = None) -> tuple[list[RetractReport], list[str]]:
    reports, problems = [], []
    objs = tuple(chain.base.objects)
    for k, step in enumerate(chain.steps):
        if set(step.domain) != set(objs):
            problems.append(f"step {k} starts from a different object set than step {k - 1} ends on")
        rep = verify_retract(chain.base.restrict(step.domain), step, up_to_length)
        reports.append(rep)
        if not rep.ok:
            problems.append(f"step {k} ({step.direction}) fails: {rep.failures[0][2]}")
        objs = step.codomain
    return reports, problems


def verify_extremal_model(grid: GridComplex, chain: RetractChain, up_to_length: int | None = None) -> ModelReport:
    reports, problems = verify_chain(chain, up_to_length)
    final = set(chain.final_A)
    missing = sorted(x for x in ext_points(grid) if x not in final)
    if missing:
        problems.append(f"{len(missing)} extremal points are not in the final object set")
    exact = all(r.exact for r in reports)
    return ModelReport(not problems, exact, reports, missing, problems)


def _proper_retracts(grid: GridComplex, chain: RetractChain, max_subsets: int, up_to_length: int | None):
    final = chain.final_table()
    A = tuple(chain.final_A)
    ext = set(ext_points(grid))
    free = [x for x in A if x not in ext]
    total = 2 ** len(free) - 1
    if total > max_subsets:
        raise SubsetBudgetExceeded(f"{total} proper subsets to test", subsets=total, limit=max_subsets)
    for r in range(len(free)):
        for keep in combinations(free, r):
            sub = tuple(x for x in A if x in ext or x in keep)
            for direction in ("future", "past"):
                if find_retract(final, sub, direction, up_to_length) is not None:
                    yield direction, sub


def nontrivial_retracts(
    grid: GridComplex, chain: RetractChain, max_subsets: int = 4096, up_to_length: int | None = None
) -> list[tuple[str, tuple]]:
    """Every (direction, A') with Ext(X) <= A' strictly inside the final set admitting a retract."""
    return list(_proper_retracts(grid, chain, max_subsets, up_to_length))


def is_minimal(grid: GridComplex, chain: RetractChain, max_subsets: int = 4096, up_to_length: int | None = None) -> bool:
    """No retract of the final table onto a proper subset that still holds Ext(X)."""
    return next(_proper_retracts(grid, chain, max_subsets, up_to_length), None) is None


def _reference_bipartite(grid: GridComplex, chain: RetractChain) -> FiniteCategory:
    budget = getattr(chain.base, "budget", Budget())
    return full_subcategory(grid, ext_points(grid), budget)


def _same_homs(left: FiniteCategory, right: FiniteCategory, objects) -> bool:
    for a, b in product(objects, repeat=2):
        if list(left.hom(a, b)) != list(right.hom(a, b)):
            return False
    return True


def check_bipartite_injection(grid: GridComplex, chain: RetractChain) -> bool:
    """Ext of the space includes into Ext of the model, with the same hom-sets between them."""
    ext = sorted(ext_points(grid))
    final = chain.final_table()
    if not set(ext) <= set(final.ext()):
        return False
    reference = _reference_bipartite(grid, chain)
    if isinstance(final, HomTable) or hasattr(final, "grid"):
        return _same_homs(reference, final, ext)
    return all(len(reference.hom(a, b)) == len(final.hom(a, b)) for a, b in product(ext, repeat=2))


def check_bipartite_iso(grid: GridComplex, chain: RetractChain) -> bool:
    if grid.has_cycles:
        raise NotAPospace("the grid has a directed cycle, so the order is not antisymmetric")
    ext = set(ext_points(grid))
    final = chain.final_table()
    model_ext = set(final.ext())
    if model_ext != ext:
        return False
    reference = _reference_bipartite(grid, chain)
    for a, b in product(sorted(ext), repeat=2):
        if len(reference.hom(a, b)) != len(final.hom(a, b)):
            return False
    return True


def ext_monotone(grid: GridComplex, chain: RetractChain) -> bool:
    """Ext of every stage is contained in Ext of the next stage."""
    prev = set(ext_points(grid))
    for k in range(1, len(chain.steps) + 1):
        cur = set(chain.table(k).ext())
        if not prev <= cur:
            return False
        prev = cur
    return True


def shrink_model(table: FiniteCategory, keep, order: str = "fp", max_rounds: int = 100) -> RetractChain:
    """Greedy chain: drop one object at a time through a single-point future or past retract.

    Objects in `keep` are never dropped. Each step is a genuine retract found by the
    bijection search, so the resulting chain verifies by construction.
    """
    keep = set(keep)
    chain = RetractChain(table)
    current = list(table.objects)
    directions = ["future", "past"] if order == "fp" else ["past", "future"]
    for _ in range(max_rounds):
        progressed = False
        for x in list(current):
            if x in keep:
                continue
            sub = [y for y in current if y != x]
            for direction in directions:
                step = find_retract(table.restrict(current), sub, direction)
                if step is not None:
                    chain.steps.append(step)
                    current = sub
                    progressed = True
                    break
        if not progressed:
            break
    return chain


def bipartite_table(grid: GridComplex, budget: Budget = Budget()) -> HomTable:
    return full_subcategory(grid, ext_points(grid), budget)
