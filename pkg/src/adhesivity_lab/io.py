"""JSON documents: a versioned envelope around objects, morphisms, spans, squares, rules and presheaves.

Objects may be written inline or referenced by name from a top-level ``objects``
table in the payload.  Element ids are strings; integers are accepted and
converted.
"""

from __future__ import annotations

import json
from typing import Any

from .categories import (
    FINSET,
    CommaCategory,
    FinSetObj,
    GraphCategory,
    ProductCategory,
    ProductObj,
    SGraphCategory,
    TreeCategory,
    TreeObj,
    parse_category,
    sgraph,
)
from .categories.base import labels_of
from .core import AdhesivityError, InvalidMorphism, Morphism, Square, make_morphism

FORMAT_VERSION = "1"


class FormatError(AdhesivityError):
    """Malformed document; ``where`` names the offending field or line."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def _ids(items, where: str) -> list[str]:
    if not isinstance(items, list):
        raise FormatError("expected a list of ids", where)
    out = [str(x) for x in items]
    if len(set(out)) != len(out):
        raise FormatError("duplicate ids", where)
    return out


def _field(data: dict, key: str, where: str):
    if not isinstance(data, dict):
        raise FormatError("expected an object", where)
    if key not in data:
        raise FormatError(f"missing field {key!r}", where)
    return data[key]


def _lookup(index: dict, key, where: str) -> int:
    try:
        return index[str(key)]
    except KeyError:
        raise FormatError(f"unknown id {key!r}", where) from None


def _names(obj, leaf: int, n: int) -> list[str]:
    names = [str(x) for x in labels_of(obj, leaf, n)]
    if len(set(names)) != n:
        return [str(i) for i in range(n)]
    return names


def _graph_edges(data, vindex, where, need_ids=True):
    edges = _field(data, "edges", where)
    if not isinstance(edges, list):
        raise FormatError("expected a list of edges", f"{where}.edges")
    ids, src, tgt = [], [], []
    for i, e in enumerate(edges):
        w = f"{where}.edges[{i}]"
        ids.append(str(e.get("id", i)) if isinstance(e, dict) else "")
        src.append(_lookup(vindex, _field(e, "src", w), f"{w}.src"))
        tgt.append(_lookup(vindex, _field(e, "tgt", w), f"{w}.tgt"))
    if need_ids and len(set(ids)) != len(ids):
        raise FormatError("duplicate edge ids", f"{where}.edges")
    return ids, src, tgt


def object_from_json(cat, data, where: str = "object"):
    """Decode one object of ``cat``; raises FormatError with the failing path."""
    if isinstance(cat, ProductCategory):
        return ProductObj(
            object_from_json(cat.first, _field(data, "first", where), f"{where}.first"),
            object_from_json(cat.second, _field(data, "second", where), f"{where}.second"),
        )
    if isinstance(cat, CommaCategory):
        left = object_from_json(cat.left, _field(data, "left", where), f"{where}.left")
        right = object_from_json(FINSET, _field(data, "right", where), f"{where}.right")
        rindex = {n: i for i, n in enumerate(_names(right, 0, right.size))}
        glue_data = _field(data, "glue", where)
        glue = []
        for x in _names(left, 0, cat.left.leaf_sizes(left)[0]):
            w = f"{where}.glue.{x}"
            if not isinstance(glue_data, dict) or x not in glue_data:
                raise FormatError("missing glue value", w)
            try:
                glue.append(cat.functor.from_json(glue_data[x], rindex))
            except (KeyError, TypeError, IndexError) as exc:
                raise FormatError(f"bad glue value ({exc})", w) from None
        obj = cat.obj(left, right, tuple(glue))
    elif cat == FINSET:
        els = _ids(_field(data, "elements", where), f"{where}.elements")
        obj = FinSetObj(len(els), (tuple(els),))
    elif isinstance(cat, TreeCategory):
        nodes = _ids(_field(data, "nodes", where), f"{where}.nodes")
        index = {n: i for i, n in enumerate(nodes)}
        parents = _field(data, "parent", where)
        parent = []
        for n in nodes:
            p = parents.get(n) if isinstance(parents, dict) else None
            parent.append(-1 if p is None else _lookup(index, p, f"{where}.parent.{n}"))
        obj = TreeObj(tuple(parent), (tuple(nodes),))
    elif isinstance(cat, SGraphCategory):
        vs = _ids(_field(data, "vertices", where), f"{where}.vertices")
        vindex = {v: i for i, v in enumerate(vs)}
        _, src, tgt = _graph_edges(data, vindex, where, need_ids=False)
        obj = sgraph(len(vs), list(zip(src, tgt)), (tuple(vs),))
    elif isinstance(cat, GraphCategory):
        vs = _ids(_field(data, "vertices", where), f"{where}.vertices")
        vindex = {v: i for i, v in enumerate(vs)}
        eids, src, tgt = _graph_edges(data, vindex, where)
        obj = cat.obj_type(len(vs), tuple(src), tuple(tgt), (tuple(vs), tuple(eids)))
    else:
        raise FormatError(f"no JSON encoding for objects of {cat}", where)
    bad = cat.check_object(obj)
    if bad:
        raise FormatError("; ".join(bad), where)
    return obj


def object_to_json(obj) -> dict:
    cat = obj.category
    if isinstance(cat, ProductCategory):
        return {"first": object_to_json(obj.first), "second": object_to_json(obj.second)}
    if isinstance(cat, CommaCategory):
        lnames = _names(obj.left, 0, cat.left.leaf_sizes(obj.left)[0])
        rnames = _names(obj.right, 0, obj.right.size)
        return {
            "left": object_to_json(obj.left),
            "right": object_to_json(obj.right),
            "glue": {x: cat.functor.to_json(v, rnames) for x, v in zip(lnames, obj.glue)},
        }
    if cat == FINSET:
        return {"elements": _names(obj, 0, obj.size)}
    if isinstance(cat, TreeCategory):
        names = _names(obj, 0, obj.size)
        return {"nodes": names, "parent": {n: (None if p < 0 else names[p]) for n, p in zip(names, obj.parent)}}
    vs = _names(obj, 0, obj.nv)
    if isinstance(cat, SGraphCategory):
        return {"vertices": vs, "edges": [{"src": vs[s], "tgt": vs[t]} for s, t in obj.edges]}
    es = _names(obj, 1, obj.ne)
    return {
        "vertices": vs,
        "edges": [{"id": e, "src": vs[s], "tgt": vs[t]} for e, s, t in zip(es, obj.src, obj.tgt)],
    }


def _map_from_json(data, dom_names, cod_names, where):
    if not isinstance(data, dict):
        raise FormatError("expected an object mapping ids to ids", where)
    cindex = {n: i for i, n in enumerate(cod_names)}
    out = []
    for n in dom_names:
        if n not in data:
            raise FormatError(f"id {n!r} is not mapped", where)
        out.append(_lookup(cindex, data[n], f"{where}.{n}"))
    extra = set(data) - set(dom_names)
    if extra:
        raise FormatError(f"unknown ids {sorted(extra)}", where)
    return tuple(out)


def maps_from_json(cat, dom, cod, data, where: str):
    if isinstance(cat, ProductCategory):
        return (
            Morphism(dom.first, cod.first, maps_from_json(cat.first, dom.first, cod.first, _field(data, "first", where), f"{where}.first")),
            Morphism(dom.second, cod.second, maps_from_json(cat.second, dom.second, cod.second, _field(data, "second", where), f"{where}.second")),
        )
    if isinstance(cat, CommaCategory):
        h = maps_from_json(cat.left, dom.left, cod.left, _field(data, "left", where), f"{where}.left")
        k = maps_from_json(FINSET, dom.right, cod.right, _field(data, "right", where), f"{where}.right")
        return (Morphism(dom.left, cod.left, h), Morphism(dom.right, cod.right, k))
    sizes_d, sizes_c = cat.leaf_sizes(dom), cat.leaf_sizes(cod)
    if isinstance(cat, GraphCategory):
        keys = ("vertex_map", "edge_map")
    elif isinstance(cat, SGraphCategory):
        keys = ("vertex_map",)
    else:
        keys = ("map",)
    return tuple(
        _map_from_json(_field(data, key, where), _names(dom, i, sizes_d[i]), _names(cod, i, sizes_c[i]), f"{where}.{key}")
        for i, key in enumerate(keys)
    )


def maps_to_json(f: Morphism) -> dict:
    cat = f.cat
    if isinstance(cat, ProductCategory):
        return {"first": maps_to_json(f.maps[0]), "second": maps_to_json(f.maps[1])}
    if isinstance(cat, CommaCategory):
        return {"left": maps_to_json(f.maps[0]), "right": maps_to_json(f.maps[1])}
    if isinstance(cat, GraphCategory):
        keys = ("vertex_map", "edge_map")
    elif isinstance(cat, SGraphCategory):
        keys = ("vertex_map",)
    else:
        keys = ("map",)
    sizes_d, sizes_c = cat.leaf_sizes(f.dom), cat.leaf_sizes(f.cod)
    out = {}
    for i, key in enumerate(keys):
        dn, cn = _names(f.dom, i, sizes_d[i]), _names(f.cod, i, sizes_c[i])
        out[key] = {dn[x]: cn[y] for x, y in enumerate(f.maps[i])}
    return out


class Decoder:
    """Decodes payload parts against a category and an optional named-object table."""

    def __init__(self, cat, objects: dict | None = None):
        self.cat = cat
        self.table: dict = {}
        for name, data in (objects or {}).items():
            self.table[name] = object_from_json(cat, data, f"payload.objects.{name}")

    def obj(self, data, where: str):
        if isinstance(data, str):
            if data not in self.table:
                raise FormatError(f"unknown object {data!r}", where)
            return self.table[data]
        return object_from_json(self.cat, data, where)

    def morphism(self, data, where: str) -> Morphism:
        dom = self.obj(_field(data, "dom", where), f"{where}.dom")
        cod = self.obj(_field(data, "cod", where), f"{where}.cod")
        maps = maps_from_json(self.cat, dom, cod, data, where)
        try:
            return make_morphism(dom, cod, maps)
        except InvalidMorphism as exc:
            raise FormatError(f"not a morphism: {exc}", where) from None


class Encoder:
    """Collects objects into a named table so morphisms can refer to them."""

    def __init__(self):
        self.names: list = []
        self.objects: dict = {}

    def obj(self, X) -> str:
        for name, Y in self.names:
            if Y == X and object_to_json(Y) == object_to_json(X):
                return name
        name = f"X{len(self.names)}"
        self.names.append((name, X))
        self.objects[name] = object_to_json(X)
        return name

    def morphism(self, f: Morphism) -> dict:
        return {"dom": self.obj(f.dom), "cod": self.obj(f.cod), **maps_to_json(f)}

    def square(self, sq: Square) -> dict:
        return {k: self.morphism(getattr(sq, k)) for k in ("top", "left", "right", "bottom")}


def square_from_json(dec: Decoder, data, where: str = "payload") -> Square:
    return Square(*(dec.morphism(_field(data, k, where), f"{where}.{k}") for k in ("top", "left", "right", "bottom")))


def envelope(cat, payload: dict) -> dict:
    return {"format_version": FORMAT_VERSION, "category": cat.name, "payload": payload}


def parse_document(text: str, source: str = "<input>") -> tuple[Any, dict]:
    """Parse an envelope; returns ``(category, payload)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None
    version = _field(doc, "format_version", source)
    if str(version) != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version!r}", f"{source}.format_version")
    tag = _field(doc, "category", source)
    try:
        cat = parse_category(str(tag))
    except AdhesivityError as exc:
        raise FormatError(str(exc), f"{source}.category") from None
    payload = _field(doc, "payload", source)
    if not isinstance(payload, dict):
        raise FormatError("payload must be an object", f"{source}.payload")
    return cat, payload


def load(path: str) -> tuple[Any, dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(str(exc), path) from None
    return parse_document(text, path)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)
