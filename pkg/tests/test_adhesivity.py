from hypothesis import given, settings

from adhesivity_lab.adhesivity import (
    check_MN_adhesive,
    check_only_if,
    check_stable,
    check_van_kampen,
    factor_union,
    is_N_adhesive,
    is_N_preadhesive,
    kernel_pair_diagram,
    pushout_square,
    replay_cube,
    right_leg_mono,
    split_mono_pushout_stable,
)
from adhesivity_lab.categories import DAG, FINSET, FinSetObj, sgraph
from adhesivity_lab.classes import DCL_D, MONO, MOR, REG
from adhesivity_lab.core import identity, is_iso, make_morphism
from adhesivity_lab.limits import is_pullback, is_pushout
from adhesivity_lab.subobjects import union_via_pushout

from conftest import span


def fold():
    return make_morphism(FinSetObj(2), FinSetObj(1), [(0, 0)])


def test_identity_square_is_van_kampen():
    X = sgraph(1, [(0, 0)])
    sq = pushout_square(identity(X), identity(X))
    assert check_van_kampen(sq, 2).holds


def test_fold_along_fold_is_stable_but_not_van_kampen():
    sq = pushout_square(fold(), fold())
    assert is_pushout(sq) and not is_pullback(sq)
    assert check_stable(sq, 3).status == "HoldsUpTo(3)"
    v = check_van_kampen(sq, 3)
    assert not v.holds and v.status == "Fails"
    faces = replay_cube(v.witness)
    assert faces["top_pushout"] and not all(faces.values())


def test_verdict_truthiness():
    sq = pushout_square(fold(), fold())
    assert not check_only_if(sq, 2)
    assert check_stable(sq, 2)


def test_reg_along_mono_pushout_in_sgraph_is_van_kampen():
    X = sgraph(1, [])
    m = make_morphism(X, sgraph(2, [(0, 1)]), [(0,)])
    n = make_morphism(X, sgraph(2, []), [(1,)])
    sq = pushout_square(m, n)
    assert is_pullback(sq)
    assert check_van_kampen(sq, 2).holds


def test_preadhesive_morphisms():
    X = sgraph(1, [])
    assert is_N_preadhesive(identity(X), MONO, 2).holds
    m = make_morphism(X, sgraph(2, [(0, 1)]), [(0,)])
    assert is_N_preadhesive(m, MONO, 2, stable_bound=1).holds
    assert is_N_adhesive(m, MONO, 1).holds


def test_fold_is_not_mor_preadhesive_in_finset():
    v = is_N_preadhesive(fold(), MOR, 1)
    assert not v.holds and "not a pullback" in v.reason


def test_kernel_pair_diagram_for_reg_mono_square():
    m = make_morphism(sgraph(1, []), sgraph(2, [(0, 1)]), [(0,)])
    n = make_morphism(sgraph(1, []), sgraph(1, [(0, 0)]), [(0,)])
    d = kernel_pair_diagram(pushout_square(m, n), 1)
    assert set(d.squares()) == {f"strip{i}_{p}" for i in (1, 2) for p in ("left", "center", "right")}
    assert d.holds


def test_union_factorization_in_finset_is_trivial():
    X = FinSetObj(3)
    m = make_morphism(FinSetObj(1), X, [(0,)])
    n = make_morphism(FinSetObj(2), X, [(0, 1)])
    f = factor_union(union_via_pushout(m, n), MONO, MONO)
    assert f.factorizes and f.e_u_iso and f.m_u_in_class


def test_regular_union_of_endpoints_is_not_regular_in_sgraph():
    e = sgraph(2, [(0, 1)])
    a = make_morphism(sgraph(1, []), e, [(0,)])
    b = make_morphism(sgraph(1, []), e, [(1,)])
    assert REG(a) and REG(b)
    f = factor_union(union_via_pushout(a, b, M=REG, N=MONO), REG, MONO)
    assert f.factorizes and f.e_u_epi and not f.e_u_iso
    assert is_iso(f.m_u)


def test_finset_is_adhesive_on_a_small_sample():
    rep = check_MN_adhesive(FINSET, MONO, MONO, sample_count=5, bound=2, seed=1, span_bound=2)
    assert rep.holds and rep.squares_checked == 5


def test_dag_dcl_mono_small_sample():
    rep = check_MN_adhesive(DAG, DCL_D, MONO, sample_count=5, bound=2, seed=2, span_bound=1)
    assert rep.holds


@settings(max_examples=30)
@given(span("FinSet", 2))
def test_pushouts_preserve_monos_and_split_monos(s):
    f, g = s
    sq = pushout_square(f, g)
    assert right_leg_mono(sq)
    assert split_mono_pushout_stable(sq)
