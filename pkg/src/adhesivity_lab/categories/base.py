from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

from ..core import BoundTooLarge, CategoryMismatch, Morphism, NoSuchObject

# Above this many labelled candidates, enumeration refuses instead of grinding.
ENUMERATION_CEILING = 2_000_000


def classes_of(n: int, pairs) -> tuple[tuple[int, ...], int]:
    """Union-find over ``range(n)``; classes are numbered by their least member."""
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    label: dict[int, int] = {}
    out = []
    for a in range(n):
        r = find(a)
        if r not in label:
            label[r] = len(label)
        out.append(label[r])
    return tuple(out), len(label)


def primed(labels: Sequence[str]) -> tuple[str, ...]:
    seen: set[str] = set()
    out = []
    for lab in labels:
        while lab in seen:
            lab += "'"
        seen.add(lab)
        out.append(lab)
    return tuple(out)


def labels_of(obj, leaf: int, n: int) -> tuple[str, ...]:
    labs = getattr(obj, "labels", None)
    if labs is not None and leaf < len(labs) and labs[leaf] is not None and len(labs[leaf]) == n:
        return labs[leaf]
    return tuple(str(i) for i in range(n))


def injective_choices(
    n: int, options: Sequence[Sequence[int]], injective: bool
) -> Iterator[tuple[int, ...]]:
    """All tuples ``t`` with ``t[i] in options[i]``, optionally pairwise distinct."""
    if not injective:
        yield from itertools.product(*options)
        return
    chosen: list[int] = []
    used: set[int] = set()

    def rec(i):
        if i == n:
            yield tuple(chosen)
            return
        for c in options[i]:
            if c in used:
                continue
            used.add(c)
            chosen.append(c)
            yield from rec(i + 1)
            chosen.pop()
            used.discard(c)

    yield from rec(0)


def narrow(candidates, allowed_row, i):
    if allowed_row is None or allowed_row[i] is None:
        return candidates
    return [c for c in candidates if c in allowed_row[i]]


class Category:
    """Interface implemented by every concrete category."""

    name = "?"

    def __repr__(self) -> str:
        return self.name

    # -- presentation -------------------------------------------------
    def leaf_sizes(self, obj) -> tuple[int, ...]:
        raise NotImplementedError

    def flatten(self, maps: tuple) -> tuple:
        return maps

    def unflatten(self, dom, cod, leaf_maps: tuple) -> tuple:
        return leaf_maps

    def check_object(self, obj) -> list[str]:
        raise NotImplementedError

    def check_maps(self, dom, cod, maps) -> list[str]:
        raise NotImplementedError

    def identity_maps(self, obj) -> tuple:
        return tuple(tuple(range(n)) for n in self.leaf_sizes(obj))

    def owns(self, obj) -> bool:
        return getattr(obj, "category", None) == self

    def require(self, *objs) -> None:
        for o in objs:
            if not self.owns(o):
                raise CategoryMismatch(f"{o!r} is not an object of {self}")

    # -- hom-sets -----------------------------------------------------
    def search(self, A, B, allowed=None, injective: bool = False) -> Iterator[tuple]:
        """Yield raw ``maps`` tuples of structure-preserving maps ``A -> B``.

        ``allowed`` optionally restricts, per leaf and per element, the admissible
        images (``None`` entries mean unrestricted).
        """
        raise NotImplementedError

    def homs(self, A, B, allowed=None, injective: bool = False) -> Iterator[Morphism]:
        self.require(A, B)
        for maps in self.search(A, B, allowed, injective):
            yield Morphism(A, B, maps)

    # -- finite limits and colimits -----------------------------------
    def pullback(self, f: Morphism, g: Morphism):
        raise NotImplementedError

    def pushout(self, f: Morphism, g: Morphism):
        raise NotImplementedError

    def equalizer(self, f: Morphism, g: Morphism):
        raise NotImplementedError

    def coequalizer(self, f: Morphism, g: Morphism):
        raise NotImplementedError

    def initial(self):
        raise NoSuchObject(f"{self} has no initial object")

    def terminal(self):
        raise NoSuchObject(f"{self} has no terminal object")

    # -- enumeration --------------------------------------------------
    def canonical_key(self, obj):
        """A complete isomorphism invariant, or ``None`` to fall back on iso search."""
        return None

    def invariant(self, obj):
        """Cheap isomorphism invariant used to bucket candidates before iso search."""
        return self.leaf_sizes(obj)

    def is_isomorphic(self, A, B) -> bool:
        # an injective structure map between objects of equal size is invertible in
        # every category shipped here
        if self.leaf_sizes(A) != self.leaf_sizes(B):
            return False
        return next(self.search(A, B, None, True), None) is not None

    def labelled_objects(self, bound: int) -> Iterator:
        raise NotImplementedError

    def estimate(self, bound: int) -> int:
        return 0

    def enumerate(self, bound: int) -> tuple:
        return _enumerate_cached(self, bound)

    def subobjects(self, X) -> list[Morphism]:
        raise NotImplementedError


@lru_cache(maxsize=None)
def _enumerate_cached(cat: Category, bound: int) -> tuple:
    if bound < 0:
        return ()
    if cat.estimate(bound) > ENUMERATION_CEILING:
        raise BoundTooLarge(
            f"enumerating {cat} up to {bound} elements per sort exceeds the ceiling "
            f"of {ENUMERATION_CEILING} labelled candidates"
        )
    seen = {}
    buckets: dict = {}
    for obj in cat.labelled_objects(bound):
        key = cat.canonical_key(obj)
        if key is None:
            inv = cat.invariant(obj)
            bucket = buckets.setdefault(inv, [])
            if not any(cat.is_isomorphic(obj, other) for other in bucket):
                bucket.append(obj)
                seen[(cat.leaf_sizes(obj), len(seen))] = obj
        elif key not in seen:
            seen[key] = obj
    return tuple(seen[k] for k in sorted(seen))


class FlatCategory(Category):
    """A category presented by finitely many sorts of elements plus structure.

    Subclasses provide ``restrict`` (induced substructure), ``coproduct``,
    ``quotient`` and ``pullback_apex``; limits and colimits are derived here.
    """

    def restrict(self, X, keep: Sequence[Sequence[int]]):
        """Substructure on the kept elements; returns ``(S, inclusion_maps)``."""
        raise NotImplementedError

    def coproduct(self, A, B):
        raise NotImplementedError

    def quotient(self, X, rel: Sequence[Sequence[tuple[int, int]]]):
        """Quotient by the congruence generated by ``rel``; returns ``(Q, maps)``."""
        raise NotImplementedError

    def pullback_apex(self, A, B, pairs: Sequence[Sequence[tuple[int, int]]]):
        raise NotImplementedError

    def pullback(self, f: Morphism, g: Morphism):
        if f.cod != g.cod:
            raise CategoryMismatch("pullback needs a cospan with a common codomain")
        A, B = f.dom, g.dom
        pairs = []
        for fm, gm in zip(f.maps, g.maps):
            by_image: dict[int, list[int]] = {}
            for b, c in enumerate(gm):
                by_image.setdefault(c, []).append(b)
            pairs.append([(a, b) for a, c in enumerate(fm) for b in by_image.get(c, ())])
        P = self.pullback_apex(A, B, pairs)
        p1 = Morphism(P, A, tuple(tuple(a for a, _ in ps) for ps in pairs))
        p2 = Morphism(P, B, tuple(tuple(b for _, b in ps) for ps in pairs))
        return P, p1, p2

    def pushout(self, f: Morphism, g: Morphism):
        if f.dom != g.dom:
            raise CategoryMismatch("pushout needs a span with a common domain")
        S, i1, i2 = self.coproduct(f.cod, g.cod)
        rel = [
            [(a[fm[c]], b[gm[c]]) for c in range(len(fm))]
            for fm, gm, a, b in zip(f.maps, g.maps, i1, i2)
        ]
        Q, q = self.quotient(S, rel)
        j1 = Morphism(f.cod, Q, tuple(tuple(qm[x] for x in im) for qm, im in zip(q, i1)))
        j2 = Morphism(g.cod, Q, tuple(tuple(qm[x] for x in im) for qm, im in zip(q, i2)))
        return Q, j1, j2

    def equalizer(self, f: Morphism, g: Morphism):
        if f.dom != g.dom or f.cod != g.cod:
            raise CategoryMismatch("equalizer needs a parallel pair")
        keep = [[i for i, (a, b) in enumerate(zip(fm, gm)) if a == b] for fm, gm in zip(f.maps, g.maps)]
        E, maps = self.restrict(f.dom, keep)
        return E, Morphism(E, f.dom, maps)

    def coequalizer(self, f: Morphism, g: Morphism):
        if f.dom != g.dom or f.cod != g.cod:
            raise CategoryMismatch("coequalizer needs a parallel pair")
        rel = [list(zip(fm, gm)) for fm, gm in zip(f.maps, g.maps)]
        Q, maps = self.quotient(f.cod, rel)
        return Q, Morphism(f.cod, Q, maps)

    def subobject_keeps(self, X) -> Iterator:
        raise NotImplementedError

    def subobjects(self, X) -> list[Morphism]:
        out = []
        for S, maps in self.subobject_keeps(X):
            out.append(Morphism(S, X, maps))
        return out

    def estimate(self, bound: int) -> int:
        return 0


__all__ = [
    "Category",
    "FlatCategory",
    "classes_of",
    "injective_choices",
    "labels_of",
    "narrow",
    "primed",
]
