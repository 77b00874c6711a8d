"""Comma categories ``L ↓ R`` with ``L`` a forgetful functor into finite sets.

An object is ``(left, right, glue)`` where ``left`` lives in the left category,
``right`` is a finite set and ``glue`` sends each element of the underlying set
of ``left`` (its first sort) to an element of ``R(right)``. Elements of
``R(right)`` are kept as plain Python values, so ``R`` acts on them directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..core import ApexOutsideCategory, CategoryMismatch, Morphism, NoSuchObject, identity, leaves
from .base import Category
from .finset import FINSET, FinSetObj


class PairFunctor:
    """``X ↦ X × X``."""

    name = "Square"

    def __eq__(self, other):
        return type(other) is type(self)

    def __hash__(self):
        return hash(self.name)

    def valid(self, value, n: int) -> bool:
        return (
            isinstance(value, tuple)
            and len(value) == 2
            and all(isinstance(x, int) and 0 <= x < n for x in value)
        )

    def apply(self, k, value):
        return (k[value[0]], k[value[1]])

    def matches(self, va, vb):
        """Pairs ``(a, b)`` forced by ``R(k)(va) = vb``, or ``None`` if impossible."""
        return list(zip(va, vb))

    def zip(self, va, vb, index):
        return (index[(va[0], vb[0])], index[(va[1], vb[1])])

    def elements(self, n: int):
        return list(itertools.product(range(n), repeat=2))

    def count(self, n: int) -> int:
        return n * n

    def shape(self, value):
        return 2

    def to_json(self, value, names):
        return [names[value[0]], names[value[1]]]

    def from_json(self, data, index):
        return (index[data[0]], index[data[1]])


class KleeneSquareFunctor(PairFunctor):
    """``X ↦ X* × X*`` with words truncated at ``max_len`` letters."""

    def __init__(self, max_len: int = 3):
        self.max_len = max_len
        self.name = "KleeneSq" if max_len == 3 else f"KleeneSq[{max_len}]"

    def __eq__(self, other):
        return isinstance(other, KleeneSquareFunctor) and other.max_len == self.max_len

    def __hash__(self):
        return hash(("KleeneSq", self.max_len))

    def _word(self, w, n):
        return isinstance(w, tuple) and len(w) <= self.max_len and all(
            isinstance(x, int) and 0 <= x < n for x in w
        )

    def valid(self, value, n):
        return isinstance(value, tuple) and len(value) == 2 and all(self._word(w, n) for w in value)

    def apply(self, k, value):
        return tuple(tuple(k[x] for x in w) for w in value)

    def matches(self, va, vb):
        if any(len(a) != len(b) for a, b in zip(va, vb)):
            return None
        return [p for a, b in zip(va, vb) for p in zip(a, b)]

    def zip(self, va, vb, index):
        return tuple(tuple(index[p] for p in zip(a, b)) for a, b in zip(va, vb))

    def words(self, n):
        out = []
        for length in range(self.max_len + 1):
            out.extend(itertools.product(range(n), repeat=length))
        return out

    def elements(self, n):
        ws = self.words(n)
        return list(itertools.product(ws, ws))

    def count(self, n):
        return sum(n**k for k in range(self.max_len + 1)) ** 2

    def shape(self, value):
        return tuple(len(w) for w in value)

    def to_json(self, value, names):
        return [[names[x] for x in w] for w in value]

    def from_json(self, data, index):
        return tuple(tuple(index[x] for x in w) for w in data)


@dataclass(frozen=True)
class CommaObj:
    left: object
    right: FinSetObj
    glue: tuple
    functor: PairFunctor

    @property
    def category(self):
        return CommaCategory(self.left.category, self.functor)


class CommaCategory(Category):
    def __init__(self, left: Category, functor: PairFunctor):
        self.left = left
        self.functor = functor
        self.name = f"Comma(U_{left.name},{functor.name})"

    def __eq__(self, other):
        return isinstance(other, CommaCategory) and (self.left, self.functor) == (other.left, other.functor)

    def __hash__(self):
        return hash(("Comma", self.left, self.functor))

    def obj(self, left, right, glue) -> CommaObj:
        if isinstance(right, int):
            right = FinSetObj(right)
        return CommaObj(left, right, tuple(glue), self.functor)

    def morphism(self, dom, cod, h: Morphism, k: Morphism) -> Morphism:
        return Morphism(dom, cod, (h, k))

    def underlying(self, left_obj) -> int:
        return self.left.leaf_sizes(left_obj)[0]

    def leaf_sizes(self, obj):
        return self.left.leaf_sizes(obj.left) + (obj.right.size,)

    def flatten(self, maps):
        return leaves(maps[0]) + leaves(maps[1])

    def unflatten(self, dom, cod, leaf_maps):
        h = Morphism(dom.left, cod.left, self.left.unflatten(dom.left, cod.left, leaf_maps[:-1]))
        k = Morphism(dom.right, cod.right, (leaf_maps[-1],))
        return (h, k)

    def identity_maps(self, obj):
        return (identity(obj.left), identity(obj.right))

    def check_object(self, obj):
        if not isinstance(obj, CommaObj) or obj.functor != self.functor:
            return [f"not an object of {self}: {obj!r}"]
        bad = [f"left part: {v}" for v in self.left.check_object(obj.left)]
        if bad:
            return bad
        n = self.underlying(obj.left)
        if len(obj.glue) != n:
            bad.append(f"glue is not total: {len(obj.glue)} values for {n} elements")
        bad += [
            f"glue value {v!r} of element {i} is not in R(right)"
            for i, v in enumerate(obj.glue)
            if not self.functor.valid(v, obj.right.size)
        ]
        return bad

    def check_maps(self, dom, cod, maps):
        if len(maps) != 2 or not all(isinstance(m, Morphism) for m in maps):
            return ["comma morphisms are pairs (left, right)"]
        h, k = maps
        if (h.dom, h.cod, k.dom, k.cod) != (dom.left, cod.left, dom.right, cod.right):
            return ["component morphisms have the wrong endpoints"]
        bad = [f"left part: {v}" for v in self.left.check_maps(h.dom, h.cod, h.maps)]
        bad += [f"right part: {v}" for v in FINSET.check_maps(k.dom, k.cod, k.maps)]
        if bad:
            return bad
        u, km = leaves(h)[0], k.maps[0]
        for x, v in enumerate(dom.glue):
            if self.functor.apply(km, v) != cod.glue[u[x]]:
                bad.append(f"glue of element {x} is not preserved")
        return bad

    def search(self, A, B, allowed=None, injective=False):
        nl = len(self.left.leaf_sizes(A.left))
        lo = allowed[:nl] if allowed else None
        row = allowed[nl] if allowed else None
        for hm in self.left.search(A.left, B.left, lo, injective):
            h = Morphism(A.left, B.left, hm)
            u = leaves(h)[0]
            forced: dict[int, int] = {}
            ok = True
            for x, v in enumerate(A.glue):
                pairs = self.functor.matches(v, B.glue[u[x]])
                if pairs is None:
                    ok = False
                    break
                for a, b in pairs:
                    if forced.setdefault(a, b) != b:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            krow = []
            for a in range(A.right.size):
                opts = None if row is None else row[a]
                if a in forced:
                    if opts is not None and forced[a] not in opts:
                        ok = False
                        break
                    opts = frozenset((forced[a],))
                krow.append(opts)
            if not ok:
                continue
            for km in FINSET.search(A.right, B.right, (tuple(krow),), injective):
                yield (h, Morphism(A.right, B.right, km))

    def _glue_through(self, legs, Q_left, Q_right):
        """Glue on a colimit apex from the images of the legs' glue values."""
        n = self.underlying(Q_left)
        glue: list = [None] * n
        for src, h, k in legs:
            u, km = leaves(h)[0], k.maps[0]
            for x, v in enumerate(src.glue):
                w = self.functor.apply(km, v)
                y = u[x]
                if glue[y] is None:
                    glue[y] = w
                elif glue[y] != w:
                    raise ApexOutsideCategory(
                        "glue values disagree on the colimit apex", witness={"element": y}
                    )
        if any(v is None for v in glue):
            raise ApexOutsideCategory("colimit apex has elements with no glue", witness=glue)
        return self.obj(Q_left, Q_right, glue)

    def pullback(self, f, g):
        if f.cod != g.cod:
            raise CategoryMismatch("pullback needs a cospan with a common codomain")
        A, B = f.dom, g.dom
        PL, l1, l2 = self.left.pullback(f.maps[0], g.maps[0])
        PR, r1, r2 = FINSET.pullback(f.maps[1], g.maps[1])
        index = {(a, b): i for i, (a, b) in enumerate(zip(r1.maps[0], r2.maps[0]))}
        u1, u2 = leaves(l1)[0], leaves(l2)[0]
        glue = [self.functor.zip(A.glue[a], B.glue[b], index) for a, b in zip(u1, u2)]
        P = self.obj(PL, PR, glue)
        return P, Morphism(P, A, (l1, r1)), Morphism(P, B, (l2, r2))

    def pushout(self, f, g):
        if f.dom != g.dom:
            raise CategoryMismatch("pushout needs a span with a common domain")
        A, B = f.cod, g.cod
        QL, l1, l2 = self.left.pushout(f.maps[0], g.maps[0])
        QR, r1, r2 = FINSET.pushout(f.maps[1], g.maps[1])
        Q = self._glue_through([(A, l1, r1), (B, l2, r2)], QL, QR)
        return Q, Morphism(A, Q, (l1, r1)), Morphism(B, Q, (l2, r2))

    def equalizer(self, f, g):
        if f.dom != g.dom or f.cod != g.cod:
            raise CategoryMismatch("equalizer needs a parallel pair")
        A = f.dom
        EL, el = self.left.equalizer(f.maps[0], g.maps[0])
        ER, er = FINSET.equalizer(f.maps[1], g.maps[1])
        pos = {a: i for i, a in enumerate(er.maps[0])}
        glue = [self.functor.apply(pos, A.glue[x]) for x in leaves(el)[0]]
        E = self.obj(EL, ER, glue)
        return E, Morphism(E, A, (el, er))

    def coequalizer(self, f, g):
        if f.dom != g.dom or f.cod != g.cod:
            raise CategoryMismatch("coequalizer needs a parallel pair")
        QL, ql = self.left.coequalizer(f.maps[0], g.maps[0])
        QR, qr = FINSET.coequalizer(f.maps[1], g.maps[1])
        Q = self._glue_through([(f.cod, ql, qr)], QL, QR)
        return Q, Morphism(f.cod, Q, (ql, qr))

    def initial(self):
        return self.obj(self.left.initial(), FinSetObj(0), ())

    def terminal(self):
        if self.functor.count(1) != 1:
            raise NoSuchObject(f"{self} has no terminal object: R(1) is not a singleton")
        T = self.left.terminal()
        (only,) = self.functor.elements(1)
        return self.obj(T, FinSetObj(1), [only] * self.underlying(T))

    def invariant(self, obj):
        return (
            self.left.canonical_key(obj.left),
            obj.right.size,
            tuple(sorted(map(repr, map(self.functor.shape, obj.glue)))),
        )

    def labelled_objects(self, bound):
        for L in self.left.enumerate(bound):
            n = self.underlying(L)
            for r in range(bound + 1):
                for glue in itertools.product(self.functor.elements(r), repeat=n):
                    yield self.obj(L, FinSetObj(r), glue)

    def estimate(self, bound):
        total = 0
        for L in self.left.enumerate(bound):
            n = self.underlying(L)
            total += sum(self.functor.count(r) ** n for r in range(bound + 1))
        return total

    def subobjects(self, X):
        out = []
        for h in self.left.subobjects(X.left):
            u = leaves(h)[0]
            for k in FINSET.subobjects(X.right):
                pos = {a: i for i, a in enumerate(k.maps[0])}
                glue = []
                for x in u:
                    v = X.glue[x]
                    try:
                        glue.append(self.functor.apply(pos, v))
                    except KeyError:
                        break
                else:
                    S = self.obj(h.dom, k.dom, glue)
                    out.append(Morphism(S, X, (h, k)))
        return out
