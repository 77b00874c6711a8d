"""Binary product categories, computed factorwise."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..core import CategoryMismatch, Morphism, identity, leaves
from .base import Category


@dataclass(frozen=True)
class ProductObj:
    first: object
    second: object

    @property
    def category(self):
        return ProductCategory(self.first.category, self.second.category)


class ProductCategory(Category):
    def __init__(self, first: Category, second: Category):
        self.first = first
        self.second = second
        self.name = f"Product({first.name},{second.name})"

    def __eq__(self, other):
        return isinstance(other, ProductCategory) and (self.first, self.second) == (other.first, other.second)

    def __hash__(self):
        return hash(("Product", self.first, self.second))

    def obj(self, first, second) -> ProductObj:
        return ProductObj(first, second)

    def pair(self, f: Morphism, g: Morphism) -> Morphism:
        return Morphism(ProductObj(f.dom, g.dom), ProductObj(f.cod, g.cod), (f, g))

    def _split(self, obj):
        return len(self.first.leaf_sizes(obj.first))

    def leaf_sizes(self, obj):
        return self.first.leaf_sizes(obj.first) + self.second.leaf_sizes(obj.second)

    def flatten(self, maps):
        return leaves(maps[0]) + leaves(maps[1])

    def unflatten(self, dom, cod, leaf_maps):
        k = self._split(dom)
        a = Morphism(dom.first, cod.first, self.first.unflatten(dom.first, cod.first, leaf_maps[:k]))
        b = Morphism(dom.second, cod.second, self.second.unflatten(dom.second, cod.second, leaf_maps[k:]))
        return (a, b)

    def identity_maps(self, obj):
        return (identity(obj.first), identity(obj.second))

    def check_object(self, obj):
        if not isinstance(obj, ProductObj):
            return [f"not a product object: {obj!r}"]
        bad = [f"first factor: {v}" for v in self.first.check_object(obj.first)]
        return bad + [f"second factor: {v}" for v in self.second.check_object(obj.second)]

    def check_maps(self, dom, cod, maps):
        if len(maps) != 2 or not all(isinstance(m, Morphism) for m in maps):
            return ["product morphisms are pairs of factor morphisms"]
        a, b = maps
        if (a.dom, a.cod, b.dom, b.cod) != (dom.first, cod.first, dom.second, cod.second):
            return ["factor morphisms have the wrong endpoints"]
        bad = [f"first factor: {v}" for v in self.first.check_maps(a.dom, a.cod, a.maps)]
        return bad + [f"second factor: {v}" for v in self.second.check_maps(b.dom, b.cod, b.maps)]

    def search(self, A, B, allowed=None, injective=False):
        k = self._split(A)
        lo = allowed[:k] if allowed else None
        hi = allowed[k:] if allowed else None
        firsts = [Morphism(A.first, B.first, m) for m in self.first.search(A.first, B.first, lo, injective)]
        if not firsts:
            return
        for m2 in self.second.search(A.second, B.second, hi, injective):
            g = Morphism(A.second, B.second, m2)
            for f in firsts:
                yield (f, g)

    def pullback(self, f, g):
        if f.cod != g.cod:
            raise CategoryMismatch("pullback needs a cospan with a common codomain")
        P1, a1, b1 = self.first.pullback(f.maps[0], g.maps[0])
        P2, a2, b2 = self.second.pullback(f.maps[1], g.maps[1])
        return ProductObj(P1, P2), self.pair(a1, a2), self.pair(b1, b2)

    def pushout(self, f, g):
        if f.dom != g.dom:
            raise CategoryMismatch("pushout needs a span with a common domain")
        Q1, a1, b1 = self.first.pushout(f.maps[0], g.maps[0])
        Q2, a2, b2 = self.second.pushout(f.maps[1], g.maps[1])
        return ProductObj(Q1, Q2), self.pair(a1, a2), self.pair(b1, b2)

    def equalizer(self, f, g):
        E1, e1 = self.first.equalizer(f.maps[0], g.maps[0])
        E2, e2 = self.second.equalizer(f.maps[1], g.maps[1])
        return ProductObj(E1, E2), self.pair(e1, e2)

    def coequalizer(self, f, g):
        Q1, q1 = self.first.coequalizer(f.maps[0], g.maps[0])
        Q2, q2 = self.second.coequalizer(f.maps[1], g.maps[1])
        return ProductObj(Q1, Q2), self.pair(q1, q2)

    def initial(self):
        return ProductObj(self.first.initial(), self.second.initial())

    def terminal(self):
        return ProductObj(self.first.terminal(), self.second.terminal())

    def canonical_key(self, obj):
        k1, k2 = self.first.canonical_key(obj.first), self.second.canonical_key(obj.second)
        return None if k1 is None or k2 is None else (k1, k2)

    def labelled_objects(self, bound):
        # factor iso classes already give product iso classes
        for a, b in itertools.product(self.first.enumerate(bound), self.second.enumerate(bound)):
            yield ProductObj(a, b)

    def estimate(self, bound):
        return max(self.first.estimate(bound), 1) * max(self.second.estimate(bound), 1)

    def subobjects(self, X):
        out = []
        for a in self.first.subobjects(X.first):
            for b in self.second.subobjects(X.second):
                out.append(self.pair(a, b))
        return out
