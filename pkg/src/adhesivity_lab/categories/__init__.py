"""Concrete finite categories and the composite constructions built from them."""

from __future__ import annotations

import re

from ..core import AdhesivityError, CategoryMismatch, Morphism, violations
from .base import ENUMERATION_CEILING, Category, FlatCategory
from .comma import CommaCategory, CommaObj, KleeneSquareFunctor, PairFunctor
from .finset import FINSET, FinSetObj
from .graph import DAG, GRAPH, DagCategory, DagObj, GraphCategory, GraphObj, find_cycle
from .product import ProductCategory, ProductObj
from .sgraph import SGRAPH, SGraphCategory, SGraphObj, sgraph
from .tree import TREE, TreeCategory, TreeObj, tree_from_order

BASE = {"FinSet": FINSET, "Graph": GRAPH, "SGraph": SGRAPH, "DAG": DAG, "Tree": TREE}
LEFT_FUNCTORS = {"U_FinSet": FINSET, "U_SGraph": SGRAPH, "U_DAG": DAG, "U_Tree": TREE}


class UnknownCategory(AdhesivityError):
    pass


def right_functor(tag: str) -> PairFunctor:
    if tag == "Square":
        return PairFunctor()
    m = re.fullmatch(r"KleeneSq(?:\[(\d+)\])?", tag)
    if m:
        return KleeneSquareFunctor(int(m.group(1)) if m.group(1) else 3)
    raise UnknownCategory(f"unknown right functor {tag!r}")


def _split_args(body: str) -> list[str]:
    depth, start, parts = 0, 0, []
    for i, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:i].strip())
            start = i + 1
    parts.append(body[start:].strip())
    return parts


def parse_category(tag: str) -> Category:
    """Parse identifiers such as ``SGraph``, ``Product(FinSet,Graph)`` or ``Comma(U_Tree,Square)``."""
    tag = tag.strip()
    if tag in BASE:
        return BASE[tag]
    m = re.fullmatch(r"(Product|Comma)\((.*)\)", tag)
    if not m:
        raise UnknownCategory(f"unknown category {tag!r}")
    args = _split_args(m.group(2))
    if len(args) != 2:
        raise UnknownCategory(f"{m.group(1)} takes two arguments, got {tag!r}")
    if m.group(1) == "Product":
        return ProductCategory(parse_category(args[0]), parse_category(args[1]))
    if args[0] not in LEFT_FUNCTORS:
        raise UnknownCategory(f"unknown left functor {args[0]!r}")
    return CommaCategory(LEFT_FUNCTORS[args[0]], right_functor(args[1]))


def validate(item) -> list[str]:
    """Violated invariants of an object or morphism; an empty list means valid."""
    if isinstance(item, Morphism):
        cat = getattr(item.dom, "category", None)
        if cat is None:
            return [f"domain is not an object: {item.dom!r}"]
        bad = [f"domain: {v}" for v in cat.check_object(item.dom)]
        bad += [f"codomain: {v}" for v in cat.check_object(item.cod)]
        return bad or violations(item)
    cat = getattr(item, "category", None)
    if cat is None:
        return [f"not an object of any known category: {item!r}"]
    return cat.check_object(item)


def hom_set(A, B) -> list[Morphism]:
    """Every structure-preserving map ``A -> B``, in a fixed canonical order."""
    cat = A.category
    if B.category != cat:
        raise CategoryMismatch(f"{A!r} and {B!r} live in different categories")
    return list(cat.homs(A, B))


def enumerate_objects(cat: Category | str, bound: int) -> tuple:
    if isinstance(cat, str):
        cat = parse_category(cat)
    return cat.enumerate(bound)


__all__ = [
    "BASE",
    "DAG",
    "ENUMERATION_CEILING",
    "FINSET",
    "GRAPH",
    "SGRAPH",
    "TREE",
    "Category",
    "CommaCategory",
    "CommaObj",
    "DagCategory",
    "DagObj",
    "FinSetObj",
    "FlatCategory",
    "GraphCategory",
    "GraphObj",
    "KleeneSquareFunctor",
    "PairFunctor",
    "ProductCategory",
    "ProductObj",
    "SGraphCategory",
    "SGraphObj",
    "TreeCategory",
    "TreeObj",
    "UnknownCategory",
    "enumerate_objects",
    "find_cycle",
    "hom_set",
    "parse_category",
    "right_functor",
    "sgraph",
    "tree_from_order",
    "validate",
]
