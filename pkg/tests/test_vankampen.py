import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ditop.category import HomTable, full_subcategory
from ditop.dipaths import Budget, enumerate_dipaths
from ditop.errors import CoverInvalid, IncompatibleRetracts
from ditop.io import piece_chains
from ditop.retracts import find_retract
from ditop.vankampen import (
    decompose_path,
    hom_from_presentation,
    make_cover,
    piece_tables,
    pushout_extremal_model,
    pushout_presentation,
    pushout_retract,
    verify_pushout,
)

from conftest import annulus, scene_file, swiss_flag

BUDGET = Budget(max_steps=20)


@pytest.fixture(scope="module")
def annulus_cover():
    scene = annulus(m=["1/2", 0], n=["1/2", 1])
    return make_cover(scene, [[(0, "1/2"), (0, 1)]], [[("1/3", 1), (0, 1)]], "amn", "mnb")


@pytest.fixture(scope="module")
def swiss_cover():
    scene = swiss_flag(l=[0, "0.5"], m=["0.2", "0.5"], n=["0.8", "0.5"], o=[1, "0.5"])
    return make_cover(scene, [[(0, 1), (0, "0.6")]], [[(0, 1), ("0.4", 1)]], "abclmno", "bcdlmno")


def presented(cover, report):
    g = cover.grid
    return {f"{g.label(a)}->{g.label(b)}": v["presented"] for (a, b), v in report.pairs.items() if a != b and v["presented"]}


def test_annulus_split_is_exact(annulus_cover):
    rep = verify_pushout(annulus_cover, BUDGET)
    assert rep.ok and rep.exact, rep.problems
    assert presented(annulus_cover, rep)["a->b"] == 2


def test_swiss_flag_split_is_exact(swiss_cover):
    rep = verify_pushout(swiss_cover, BUDGET)
    assert rep.ok and rep.exact, rep.problems
    assert presented(swiss_cover, rep)["a->d"] == 2
    assert presented(swiss_cover, rep)["a->b"] == 1


def test_every_presented_hom_matches_direct_count(swiss_cover):
    rep = verify_pushout(swiss_cover, BUDGET)
    assert all(v["presented"] == v["direct"] for v in rep.pairs.values())


def test_pieces_cover_the_grid(annulus_cover):
    g = annulus_cover.grid
    p1, p2, p0 = (annulus_cover.pieces[k] for k in (1, 2, 0))
    assert set(g.edges) == set(p1.edges) | set(p2.edges)
    assert set(p0.edges) == set(p1.edges) & set(p2.edges)


def test_gap_in_cover_is_rejected():
    scene = annulus(m=["1/2", 0], n=["1/2", 1])
    with pytest.raises(CoverInvalid):
        make_cover(scene, [[(0, "1/3"), (0, 1)]], [[("1/2", 1), (0, 1)]], "a", "b")


def test_object_outside_its_piece_is_rejected():
    scene = annulus(m=["1/2", 0], n=["1/2", 1])
    with pytest.raises(CoverInvalid):
        make_cover(scene, [[(0, "1/2"), (0, 1)]], [[("1/3", 1), (0, 1)]], "ab", "mnb")


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_decomposition_is_sound(data):
    scene = annulus(m=["1/2", 0], n=["1/2", 1])
    cover = make_cover(scene, [[(0, "1/2"), (0, 1)]], [[("1/3", 1), (0, 1)]], "amn", "mnb")
    g = cover.grid
    paths = enumerate_dipaths(g, g.named("a"), g.named("b"))
    path = data.draw(st.sampled_from(paths))
    parts = decompose_path(cover, path)
    joined = parts[0][0]
    for seg, k in parts[1:]:
        joined = joined.then(seg)
    assert joined == path
    for seg, k in parts:
        assert all(cover.edge_in(k, e) for e in seg.edges)
    assert all(k1 != k2 for (_, k1), (_, k2) in zip(parts, parts[1:]))


def test_presentation_words_are_weight_graded(annulus_cover):
    pres = pushout_presentation(*piece_tables(annulus_cover, BUDGET))
    g = annulus_cover.grid
    groups, exact = hom_from_presentation(pres, g.named("a"), g.named("b"), 20)
    assert exact and len(groups) == 2
    # a word weighs as much as the grid path it stands for
    assert {pres.weight(grp[0]) for grp in groups} == {g.longest_path_length(g.named("a"), g.named("b"))}


def test_incompatible_piece_retracts_are_rejected(annulus_cover):
    g = annulus_cover.grid
    t1, t2, _ = piece_tables(annulus_cover, BUDGET)
    m, n = g.named("m"), g.named("n")
    d1 = find_retract(t1, [g.named("a"), m, n], "future")
    d2 = find_retract(t2, [m, n, g.named("b")], "past")
    with pytest.raises(IncompatibleRetracts):
        pushout_retract(d1, d2, None, annulus_cover, BUDGET)


@pytest.fixture(scope="module")
def glued():
    sf = scene_file("vankampen_glued")
    block = sf.blocks["cover"]
    cover = make_cover(sf.scene, block["windows1"], block["windows2"], block["A1"], block["A2"])
    return cover, sf.budget, piece_chains(cover, block["models"], sf.budget)


def test_glued_scene_shape(glued):
    cover, _, _ = glued
    assert cover.grid.has_cycles
    assert [cover.pieces[k].has_cycles for k in (0, 1, 2)] == [False, False, True]


def test_glued_extremal_model(glued):
    cover, budget, chains = glued
    rep = pushout_extremal_model(chains[1], chains[2], chains[0], cover, budget)
    assert rep.ok, rep.problems
    assert rep.graded_up_to == budget.max_steps
    g = cover.grid
    final = rep.chain.final_table()
    assert sorted(g.label(x) for x in final.objects) == list("opqrst")
    gens = {f"{g.label(a)}->{g.label(b)}": n for (a, b), n in final.generator_counts().items()}
    assert gens == {"o->p": 1, "o->r": 1, "p->q": 1, "q->q": 1, "q->r": 1, "q->t": 1, "r->r": 1, "r->s": 1, "s->t": 1}


def test_glued_loops_are_graded_by_n(glued):
    cover, budget, chains = glued
    g = cover.grid
    table = full_subcategory(g, [g.named(n) for n in "qr"], budget)
    for name in "qr":
        x = g.named(name)
        loops = table.hom(x, x)
        assert [f.length for f in loops] == [0, 3, 6, 9, 12]
        assert not table.exact(x, x)
        one = loops[1]
        for f in loops:
            assert table.compose(f, one).length == f.length + 3
