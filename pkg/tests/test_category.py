import random

import pytest

from ditop.category import (
    ExplicitCategory,
    HomTable,
    count_table,
    ext_points,
    extremal_points,
    full_subcategory,
    functors,
    materialize,
    preorder,
)
from ditop.corpus import random_target_category
from ditop.dipaths import Budget
from ditop.grid import compactify

from conftest import annulus, directed_circle, holes_in_series, swiss_flag


def test_annulus_extremal_points():
    g = compactify(annulus())
    mins, maxs = extremal_points(g)
    assert {g.label(v) for v in mins} == {"a"}
    assert {g.label(v) for v in maxs} == {"b"}


def test_swiss_flag_extremal_points_and_bipartite_graph():
    g = compactify(swiss_flag())
    mins, maxs = extremal_points(g)
    assert {g.label(v) for v in mins} == {"a", "c"}
    assert {g.label(v) for v in maxs} == {"b", "d"}
    table = full_subcategory(g, ext_points(g))
    assert count_table(table, g.label) == {"a->b": 1, "a->d": 2, "c->d": 1}
    assert table.all_exact()


def test_circle_has_no_extremal_points():
    g = compactify(directed_circle())
    assert ext_points(g) == () or not ext_points(g)
    assert not preorder(g).is_antisymmetric() or len(g.vertices) == 1


def test_hom_table_is_a_category():
    g = compactify(holes_in_series())
    table = HomTable(g, g.vertices)
    assert materialize(table).check_axioms() == []


def test_composition_surjective_onto_hom_a_c():
    g = compactify(holes_in_series())
    a, b, c = (g.named(n) for n in "abc")
    table = full_subcategory(g, [a, b, c])
    composites = {table.compose(f, h) for f in table.hom(a, b) for h in table.hom(b, c)}
    assert composites == set(table.hom(a, c))
    assert len(table.hom(a, c)) == 4


def test_opposite_swaps_ends():
    g = compactify(annulus())
    table = full_subcategory(g, ext_points(g))
    op = table.opposite()
    a, b = g.named("a"), g.named("b")
    assert len(op.hom(b, a)) == len(table.hom(a, b)) == 2
    f = op.hom(b, a)[0]
    assert op.src(f) == b and op.dst(f) == a


def test_inexact_hom_is_flagged():
    g = compactify(directed_circle())
    table = HomTable(g, g.vertices, Budget(max_steps=4))
    (x,) = g.vertices
    assert len(table.hom(x, x)) == 5
    assert not table.exact(x, x)
    assert table.inexact_pairs() == [(x, x)]


def test_restriction_shares_memo():
    g = compactify(swiss_flag())
    table = HomTable(g, g.vertices)
    sub = table.restrict(ext_points(g))
    assert sub._shared is table._shared
    assert set(sub.objects) == set(ext_points(g))


def test_subcategory_rejects_foreign_objects():
    g = compactify(annulus())
    with pytest.raises(KeyError):
        HomTable(g, [(9, 9)])


def test_random_targets_are_lawful():
    rng = random.Random(3)
    for _ in range(50):
        assert random_target_category(rng).check_axioms() == []


def test_functor_enumeration_counts():
    # the walking arrow has exactly |hom| functors into a one-object monoid
    arrow = ExplicitCategory((0, 1), {(0, 0): ["i0"], (1, 1): ["i1"], (0, 1): ["f"]},
                             {("i0", "i0"): "i0", ("i1", "i1"): "i1", ("i0", "f"): "f", ("f", "i1"): "f"},
                             {0: "i0", 1: "i1"})
    z3 = ExplicitCategory((0,), {(0, 0): [0, 1, 2]},
                          {(s, t): (s + t) % 3 for s in range(3) for t in range(3)}, {0: 0})
    assert len(list(functors(arrow, z3))) == 3
    # every non-identity of Z/3 is a composite, so it has no generating indecomposables
    with pytest.raises(ValueError):
        list(functors(z3, z3))
