import pytest
from hypothesis import given, strategies as st

from adhesivity_lab.categories import DAG, FINSET, GRAPH, SGRAPH, parse_category, sgraph
from adhesivity_lab.classes import (
    DCL,
    DCL_D,
    MONO,
    MOR,
    REG,
    SPLIT,
    ClassMismatch,
    CommaClass,
    Intersection,
    ProductClass,
    member,
    parse_class,
    validate_preadhesive,
)
from adhesivity_lab.core import identity, make_morphism

from conftest import arrows


def edge():
    return GRAPH.make(2, [0], [1])


def test_target_vertex_inclusion_is_not_downward_closed():
    v = GRAPH.make(1, [], [])
    assert not member(DCL, make_morphism(v, edge(), [(1,), ()]))


def test_source_vertex_inclusion_is_downward_closed():
    v = GRAPH.make(1, [], [])
    assert member(DCL, make_morphism(v, edge(), [(0,), ()]))


def test_induced_inclusion_is_regular():
    X = sgraph(3, [(0, 1), (1, 2)])
    assert member(REG, make_morphism(sgraph(2, [(0, 1)]), X, [(0, 1)]))


def test_dcl_d_only_applies_to_dags():
    with pytest.raises(ClassMismatch):
        DCL_D(identity(edge()))


@pytest.mark.parametrize(
    "token,tag,kind",
    [
        ("mono", "Graph", type(MONO)),
        ("reg&mono", "SGraph", Intersection),
        ("mono*reg", "Product(FinSet,SGraph)", ProductClass),
        ("mono*mor", "Comma(U_SGraph,Square)", CommaClass),
        ("(dcl-d)", "DAG", type(DCL_D)),
    ],
)
def test_parse_class_tokens(token, tag, kind):
    assert isinstance(parse_class(token, tag), kind)


@pytest.mark.parametrize("token,tag", [("dcl", "FinSet"), ("nope", "Graph"), ("mono*mono", "Graph")])
def test_parse_class_rejects(token, tag):
    with pytest.raises(ClassMismatch):
        parse_class(token, tag)


@given(st.sampled_from(["FinSet", "Graph", "SGraph", "DAG"]), st.data())
def test_every_class_contains_identities(tag, data):
    cat = parse_category(tag)
    X = data.draw(st.sampled_from(cat.enumerate(2)))
    for cls in (MOR, MONO, REG, SPLIT):
        assert cls(identity(X))


@given(st.sampled_from(arrows("SGraph", 2)))
def test_membership_is_deterministic_and_nested(f):
    assert REG(f) == REG(f)
    assert not SPLIT(f) or REG(f)
    assert not REG(f) or MONO(f)


def test_reg_mono_on_sgraph_is_preadhesive():
    rep = validate_preadhesive(REG, MONO, SGRAPH, 2)
    assert rep.holds, {k: v.reason for k, v in rep.verdicts.items() if not v}


def test_dcl_d_mono_on_dag_is_preadhesive():
    assert validate_preadhesive(DCL_D, MONO, DAG, 2).holds


def test_split_mor_on_finset_produces_verdicts():
    rep = validate_preadhesive(SPLIT, MOR, FINSET, 2)
    assert set(rep.verdicts) >= {"decomposition", "pullback_stability"}
    stab = rep.verdicts["pullback_stability"]
    assert not stab.holds and stab.witness is not None
