import pytest
from hypothesis import given

from adhesivity_lab.categories import GRAPH, FinSetObj, sgraph
from adhesivity_lab.core import (
    BoundedVerdict,
    CompositionError,
    InvalidMorphism,
    Square,
    classify,
    commutes,
    compose,
    cube_commutes,
    first_failure,
    identity,
    make_morphism,
    same,
)
from adhesivity_lab.adhesivity import pushout_square, stable_cubes

from conftest import arrow, composable_pair


def test_identity_laws_on_a_graph_map():
    A = GRAPH.make(2, [0], [1])
    B = GRAPH.make(3, [0, 1], [1, 2])
    f = make_morphism(A, B, [(1, 2), (1,)])
    assert same(compose(identity(B), f), f)
    assert same(compose(f, identity(A)), f)


def test_vertex_maps_compose_as_functions():
    u, a, one = FinSetObj(1), FinSetObj(1), FinSetObj(2)
    f = make_morphism(u, a, [(0,)])
    g = make_morphism(a, one, [(1,)])
    assert compose(g, f).maps == ((1,),)


def test_compose_rejects_mismatched_endpoints():
    f = identity(FinSetObj(1))
    g = identity(FinSetObj(2))
    with pytest.raises(CompositionError):
        compose(f, g)


def test_invalid_graph_map_is_rejected():
    A = GRAPH.make(2, [0], [1])
    with pytest.raises(InvalidMorphism):
        make_morphism(A, A, [(1, 0), (0,)])


def test_classify_constant_map():
    c = classify(make_morphism(FinSetObj(2), FinSetObj(1), [(0, 0)]))
    assert (c.is_mono, c.is_epi, c.is_iso) == (False, True, False)


def test_classify_identity():
    assert all(classify(identity(sgraph(2, [(0, 1)]))))


def test_edgeless_pair_into_edge_is_mono_but_not_split():
    f = make_morphism(sgraph(2, []), sgraph(2, [(0, 1)]), [(0, 1)])
    c = classify(f)
    assert c.is_mono and not c.is_split_mono


def test_all_identity_square_commutes():
    i = identity(FinSetObj(2))
    assert commutes(Square(i, i, i, i))


def test_square_with_one_wrong_value_does_not_commute():
    X = FinSetObj(2)
    swap = make_morphism(X, X, [(1, 0)])
    i = identity(X)
    assert not commutes(Square(i, i, i, swap))


def test_stable_cubes_commute():
    m = make_morphism(FinSetObj(1), FinSetObj(2), [(0,)])
    sq = pushout_square(m, identity(FinSetObj(1)))
    cubes = list(stable_cubes(sq, 2))
    assert cubes and all(cube_commutes(c) for c in cubes)


def test_first_failure_prefers_the_first_failing_verdict():
    vs = [BoundedVerdict.holds_up_to(2, 3), BoundedVerdict.fails("w", "bad"), BoundedVerdict.fails("x", "worse")]
    v = first_failure(vs, 2)
    assert not v and v.witness == "w" and v.status == "Fails"
    assert first_failure([BoundedVerdict.holds_up_to(2, 3)] * 2, 2).checked == 6


def test_bounded_verdict_status_names_the_bound():
    assert BoundedVerdict.holds_up_to(3).status == "HoldsUpTo(3)"


@given(composable_pair("Graph", 2), arrow("Graph", 2))
def test_composition_is_associative(pair, h):
    f, g = pair
    if h.dom != g.cod:
        h = identity(g.cod)
    assert same(compose(h, compose(g, f)), compose(compose(h, g), f))


@given(arrow("SGraph", 2))
def test_identities_are_neutral(f):
    assert same(compose(identity(f.cod), f), f)
    assert same(compose(f, identity(f.dom)), f)


@given(arrow("FinSet", 3))
def test_iso_means_mono_and_epi_in_finset(f):
    c = classify(f)
    assert c.is_iso == (c.is_mono and c.is_epi)
    assert not c.is_iso or c.is_split_mono
