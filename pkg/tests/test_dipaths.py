import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ditop.category import HomTable
from ditop.dipaths import (
    Budget,
    ClassEngine,
    LatticePath,
    classes,
    enumerate_dipaths,
    flip,
    is_exact,
    path_from_steps,
    signature_2d,
)
from ditop.errors import BudgetExceeded, NotTwoDimensional
from ditop.grid import compactify

from conftest import annulus, box_scenes, directed_circle, holes_in_series, swiss_flag


def ab(scene):
    g = compactify(scene)
    return g, g.named("a"), g.named("b")


def test_annulus_paths_and_classes():
    g, a, b = ab(annulus())
    paths = enumerate_dipaths(g, a, b)
    assert len(paths) == 20
    assert paths == sorted(paths, key=LatticePath.key)
    assert len(classes(g, a, b)) == 2


def test_swiss_flag_counts():
    g = compactify(swiss_flag())
    a, b, d = g.named("a"), g.named("b"), g.named("d")
    assert len(classes(g, a, d)) == 2
    assert len(classes(g, a, b)) == 1


def test_holes_in_series_counts():
    g = compactify(holes_in_series())
    a, c = g.named("a"), g.named("c")
    assert len(classes(g, a, c)) == 4


def test_budget_exceeded_and_truncation():
    g, a, b = ab(annulus())
    with pytest.raises(BudgetExceeded):
        enumerate_dipaths(g, a, b, Budget(max_paths=5))
    assert len(enumerate_dipaths(g, a, b, Budget(max_paths=5), truncate=True)) == 5


def test_circle_paths_are_cut_by_length():
    g = compactify(directed_circle())
    (x,) = g.vertices
    assert [c.length for c in classes(g, x, x, Budget(max_steps=3))] == [0, 1, 2, 3]
    assert not is_exact(g, x, x, 3)


def test_path_from_steps_and_validity():
    g, a, b = ab(annulus())
    p = path_from_steps(g, a, [0, 0, 0, 1, 1, 1])
    assert p.is_valid(g) and p.end(g) == b
    with pytest.raises(ValueError):
        path_from_steps(g, b, [0])  # leaves the unit square


def test_flip_out_of_range():
    g, a, b = ab(annulus())
    p = path_from_steps(g, a, [0, 1])
    with pytest.raises(IndexError):
        flip(g, p, 1)
    q = flip(g, p, 0)
    assert q is not None and q.steps == (1, 0)


def test_signature_needs_plain_2d():
    g = compactify(directed_circle())
    (x,) = g.vertices
    with pytest.raises(NotTwoDimensional):
        signature_2d(g, LatticePath(x))


@settings(max_examples=40, deadline=None)
@given(box_scenes(), st.data())
def test_flip_is_an_involution(scene, data):
    g, a, b = ab(scene)
    paths = enumerate_dipaths(g, a, b)
    if not paths:
        return
    p = data.draw(st.sampled_from(paths))
    for i in range(len(p) - 1):
        q = flip(g, p, i)
        if q is not None:
            assert q != p
            assert q.is_valid(g)
            assert flip(g, q, i) == p


@settings(max_examples=40, deadline=None)
@given(box_scenes())
def test_engine_agrees_with_flip_oracle(scene):
    g, a, _ = ab(scene)
    eng = ClassEngine(g, a)
    for v in sorted(g.reachable_from(a)):
        oracle = classes(g, a, v)
        assert eng.classes_to(v, 64) == oracle
        for cls in oracle:
            for p in cls.members:
                assert eng.class_of(eng.classify(p)) == cls


@settings(max_examples=30, deadline=None)
@given(box_scenes(), st.data())
def test_concatenation_is_well_defined(scene, data):
    """The class of p;q depends only on the classes of p and q."""
    g, a, b = ab(scene)
    table = HomTable(g, g.vertices)
    mids = sorted(v for v in g.reachable_from(a) if b in g.reachable_from(v))
    m = data.draw(st.sampled_from(mids))
    left, right = classes(g, a, m), classes(g, m, b)
    for f in left:
        for h in right:
            want = table.compose(f, h)
            for p in list(f.members)[:4]:
                for q in list(h.members)[:4]:
                    assert table.classify(p.then(q)) == want


@settings(max_examples=40, deadline=None)
@given(box_scenes())
def test_signature_separates_classes(scene):
    g, a, b = ab(scene)
    cs = classes(g, a, b)
    sigs = [{signature_2d(g, p) for p in c.members} for c in cs]
    assert all(len(s) == 1 for s in sigs)
    assert len(set().union(*sigs)) == len(cs)


@settings(max_examples=20, deadline=None)
@given(box_scenes())
def test_enumeration_is_deterministic(scene):
    g1, a1, b1 = ab(scene)
    g2, a2, b2 = ab(scene)
    assert classes(g1, a1, b1) == classes(g2, a2, b2)
