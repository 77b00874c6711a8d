from hypothesis import given, strategies as st

from adhesivity_lab.categories import FINSET, GRAPH, FinSetObj, sgraph
from adhesivity_lab.core import Square, compose, identity, is_iso, is_mono, make_morphism, same
from adhesivity_lab.limits import (
    codiagonal,
    coequalizer,
    cokernel_pair,
    equalizer,
    initial,
    is_pullback,
    is_pushout,
    is_regular_mono,
    iso_between,
    kernel_pair,
    pullback,
    pushout,
    terminal,
    universal_pullback,
    universal_pushout,
)

from conftest import arrows, cospan, span


def fs(n):
    return FinSetObj(n)


def test_pullback_of_identities():
    X = GRAPH.make(2, [0], [1])
    res = pullback(identity(X), identity(X))
    assert iso_between(res.apex, X) is not None
    assert is_iso(res.proj1) and is_iso(res.proj2)


def test_fiber_product_size():
    f = make_morphism(fs(2), fs(1), [(0, 0)])
    g = make_morphism(fs(1), fs(1), [(0,)])
    assert pullback(f, g).apex.size == 2


def test_pullback_of_subgraph_inclusions_is_the_intersection():
    X = GRAPH.make(3, [0, 1], [1, 2])
    ab = GRAPH.make(2, [0], [1])
    f = make_morphism(ab, X, [(0, 1), (0,)])
    g = make_morphism(ab, X, [(1, 2), (1,)])
    P = pullback(f, g).apex
    assert (P.nv, P.ne) == (1, 0)


def test_pushout_over_empty_is_coproduct():
    A, B = GRAPH.make(1, [0], [0]), GRAPH.make(2, [0], [1])
    E = GRAPH.initial()
    res = pushout(make_morphism(E, A, [(), ()]), make_morphism(E, B, [(), ()]))
    assert (res.apex.nv, res.apex.ne) == (3, 2)


def test_pushout_of_point_identities():
    i = identity(fs(1))
    assert pushout(i, i).apex.size == 1


def test_gluing_two_edges_at_an_endpoint_gives_a_path():
    v, e = GRAPH.make(1, [], []), GRAPH.make(2, [0], [1])
    res = pushout(make_morphism(v, e, [(1,), ()]), make_morphism(v, e, [(0,), ()]))
    assert (res.apex.nv, res.apex.ne) == (3, 2)


def test_equalizer_of_equal_maps_is_everything():
    f = make_morphism(fs(2), fs(3), [(0, 2)])
    E, e = equalizer(f, f)
    assert is_iso(e)


def test_equalizer_of_identity_and_swap_is_empty():
    E, _ = equalizer(identity(fs(2)), make_morphism(fs(2), fs(2), [(1, 0)]))
    assert E.size == 0


def test_coequalizer_of_coprojections_is_the_codiagonal():
    n = make_morphism(fs(1), fs(2), [(0,)])
    sq, _ = cokernel_pair(n)
    Q, c = coequalizer(sq.right, sq.bottom)
    data = codiagonal(n)
    phi = iso_between(Q, data.upsilon.cod)
    assert phi is not None
    assert Q.size == n.cod.size


def test_kernel_pair_of_mono_is_trivial():
    m = make_morphism(fs(2), fs(3), [(0, 2)])
    sq, _ = kernel_pair(m)
    assert is_iso(sq.top) and is_iso(sq.left)


def test_cokernel_pair_of_iso_is_trivial():
    sq, _ = cokernel_pair(identity(fs(2)))
    assert is_iso(sq.right) and is_iso(sq.bottom)


def test_cokernel_pair_of_point_into_two():
    n = make_morphism(fs(1), fs(2), [(0,)])
    sq, _ = cokernel_pair(n)
    assert sq.corner.size == 3


def test_codiagonal_folds_the_duplicated_element():
    n = make_morphism(fs(1), fs(2), [(0,)])
    d = codiagonal(n)
    assert sorted(d.upsilon.maps[0]) == [0, 1, 1]
    assert same(compose(d.upsilon, d.y1), identity(n.cod))
    assert same(compose(d.upsilon, d.y2), identity(n.cod))


def test_codiagonal_of_iso_is_iso():
    assert is_iso(codiagonal(identity(fs(2))).upsilon)


def test_graph_codiagonal_folds_the_free_vertex():
    v, e = GRAPH.make(1, [], []), GRAPH.make(2, [0], [1])
    d = codiagonal(make_morphism(v, e, [(0,), ()]))
    Q = d.Q
    assert (Q.nv, Q.ne) == (3, 2)
    assert (d.upsilon.cod.nv, d.upsilon.cod.ne) == (2, 1)


def test_terminal_and_initial():
    assert terminal(FINSET).size == 1
    one = terminal(GRAPH)
    assert (one.nv, one.ne) == (1, 1)
    for A in GRAPH.enumerate(1):
        assert len(list(GRAPH.homs(A, one))) == 1
        assert len(list(GRAPH.homs(initial(GRAPH), A))) == 1


def test_reg_mono_in_sgraph_is_induced():
    e = sgraph(2, [(0, 1)])
    assert is_regular_mono(make_morphism(sgraph(1, []), e, [(0,)]))
    assert not is_regular_mono(make_morphism(sgraph(2, []), e, [(0, 1)]))


def test_too_small_apex_is_not_a_pullback():
    f = make_morphism(fs(2), fs(1), [(0, 0)])
    P = fs(1)
    a = make_morphism(P, fs(2), [(0,)])
    assert not is_pullback(Square(a, a, f, f))


@given(cospan("FinSet", 2))
def test_pullback_matches_cone_oracle(pair):
    f, g = pair
    sq = pullback(f, g).square()
    assert is_pullback(sq) and universal_pullback(sq, 2)


@given(span("Graph", 1))
def test_pushout_matches_cocone_oracle(pair):
    f, g = pair
    sq = pushout(f, g).square()
    assert is_pushout(sq) and universal_pushout(sq, 1)


@given(st.sampled_from(arrows("SGraph", 2)))
def test_mono_iff_kernel_pair_projections_iso(f):
    sq, _ = kernel_pair(f)
    assert is_mono(f) == is_iso(sq.top)
