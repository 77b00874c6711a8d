import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from adhesivity_lab.categories import parse_category
from adhesivity_lab.cli import run
from adhesivity_lab.core import leaves, make_morphism
from adhesivity_lab.io import FormatError, dumps, maps_from_json, maps_to_json, object_from_json, object_to_json, parse_document

TAGS = [
    "FinSet",
    "Graph",
    "SGraph",
    "DAG",
    "Tree",
    "Product(FinSet,SGraph)",
    "Comma(U_SGraph,Square)",
    "Comma(U_FinSet,KleeneSq)",
]


@pytest.mark.parametrize("tag", TAGS)
def test_objects_and_maps_round_trip(tag):
    cat = parse_category(tag)
    objs = cat.enumerate(1)
    assert objs
    for X in objs:
        assert object_from_json(cat, object_to_json(X)) == X
        for Y in objs[:3]:
            for f in cat.homs(X, Y):
                g = make_morphism(X, Y, maps_from_json(cat, X, Y, maps_to_json(f), "map"))
                assert leaves(g) == leaves(f)


@settings(max_examples=20)
@given(st.sampled_from(parse_category("SGraph").enumerate(2)))
def test_sgraph_json_is_stable(X):
    once = object_to_json(X)
    assert object_to_json(object_from_json(X.category, once)) == once


def test_json_errors_report_line_and_column():
    with pytest.raises(FormatError) as exc:
        parse_document('{"format_version": "1",\n  "category": }', "bad.json")
    assert "bad.json:2:" in str(exc.value)


@pytest.mark.parametrize(
    "doc,where",
    [
        ({"format_version": "9", "category": "FinSet", "payload": {}}, "format_version"),
        ({"format_version": "1", "category": "Nope", "payload": {}}, "category"),
    ],
)
def test_envelope_errors(doc, where):
    with pytest.raises(FormatError) as exc:
        parse_document(json.dumps(doc))
    assert where in exc.value.where


def test_dangling_edge_endpoint_is_reported():
    cat = parse_category("Graph")
    with pytest.raises(FormatError):
        object_from_json(cat, {"vertices": ["a"], "edges": [{"id": "e", "src": "a", "tgt": "z"}]})


def cli(*argv):
    buf = io.StringIO()
    code = run([str(a) for a in argv], buf)
    return code, buf.getvalue()


def fx(fixtures_dir, name):
    return str(fixtures_dir / name)


def test_pushout_of_empty_span_is_coproduct(fixtures_dir):
    code, text = cli("pushout", fx(fixtures_dir, "empty_span.json"))
    assert code == 0
    apex = json.loads(text)["payload"]
    assert "apex" in json.dumps(apex)


def test_pullback_of_path_inclusions(fixtures_dir):
    code, text = cli("pullback", fx(fixtures_dir, "path_cospan.json"))
    doc = json.loads(text)
    assert code == 0 and doc["category"] == "SGraph"
    apex = doc["payload"]["objects"][doc["payload"]["apex"]]
    assert len(apex["vertices"]) == 1 and apex["edges"] == []


def test_union(fixtures_dir):
    code, _ = cli("union", fx(fixtures_dir, "path_m.json"), fx(fixtures_dir, "path_n.json"))
    assert code == 0


def test_vk_check_exit_codes(fixtures_dir):
    code, text = cli("vk-check", fx(fixtures_dir, "sgraph_reg_mono_square.json"), "--bound", 2)
    assert code == 0
    code, text = cli("vk-check", fx(fixtures_dir, "finset_fold_square.json"), "--bound", 2)
    assert code == 1 and "Fails" in text


def test_adhesive_and_preadhesive_checks():
    assert cli("adhesive-check", "FinSet", "--bound", 2, "--samples", 3)[0] == 0
    assert cli("preadhesive-check", "FinSet", "--class", "split,mor", "--bound", 2)[0] == 1


def test_sheaf_check(fixtures_dir):
    code, text = cli("sheaf-check", fx(fixtures_dir, "sgraph_site.json"), fx(fixtures_dir, "constant_two.json"))
    assert code == 0
    code, text = cli("sheaf-check", fx(fixtures_dir, "sgraph_site.json"))
    assert code == 0


def test_rewrite(fixtures_dir):
    code, text = cli("rewrite", fx(fixtures_dir, "delete_edge_rule.json"), fx(fixtures_dir, "path_host.json"))
    steps = json.loads(text)["payload"]["steps"]
    assert code == 0 and len(steps) == 2
    assert all(len(s["result"]["edges"]) == 1 for s in steps)


def test_enumerate_counts():
    code, text = cli("enumerate", "SGraph", "--bound", 2)
    assert code == 0 and json.loads(text)["payload"]["count"] == 13


def test_output_is_byte_identical(fixtures_dir):
    args = ("vk-check", fx(fixtures_dir, "finset_fold_square.json"), "--bound", 2, "--seed", 5)
    assert cli(*args) == cli(*args)


def test_bound_ceiling(monkeypatch):
    assert cli("enumerate", "FinSet", "--bound", 9)[0] == 2
    monkeypatch.setenv("ADHESIVITY_LAB_MAX_BOUND", "9")
    assert cli("enumerate", "FinSet", "--bound", 9)[0] == 0


def test_malformed_input(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{")
    code, text = cli("pushout", p)
    assert code == 2 and "x.json" in text


def test_unknown_subcommand():
    assert cli("frobnicate")[0] == 2


def test_dumps_sorts_keys():
    assert dumps({"b": 1, "a": 2}).index('"a"') < dumps({"b": 1, "a": 2}).index('"b"')
