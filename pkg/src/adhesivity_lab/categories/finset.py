from __future__ import annotations

from dataclasses import dataclass, field

from .base import FlatCategory, classes_of, injective_choices, labels_of, narrow, primed


@dataclass(frozen=True)
class FinSetObj:
    size: int
    labels: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def category(self):
        return FINSET


class FinSetCategory(FlatCategory):
    name = "FinSet"

    def leaf_sizes(self, obj):
        return (obj.size,)

    def check_object(self, obj):
        if not isinstance(obj, FinSetObj):
            return [f"not a finite set: {obj!r}"]
        return [] if obj.size >= 0 else ["negative size"]

    def check_maps(self, dom, cod, maps):
        if len(maps) != 1 or len(maps[0]) != dom.size:
            return ["map is not total on the domain"]
        if any(not 0 <= x < cod.size for x in maps[0]):
            return ["map leaves the codomain"]
        return []

    def search(self, A, B, allowed=None, injective=False):
        row = allowed[0] if allowed else None
        opts = [narrow(range(B.size), row, i) for i in range(A.size)]
        for t in injective_choices(A.size, opts, injective):
            yield (t,)

    def restrict(self, X, keep):
        (k,) = keep
        labs = labels_of(X, 0, X.size)
        return FinSetObj(len(k), (tuple(labs[i] for i in k),)), (tuple(k),)

    def coproduct(self, A, B):
        labs = primed(labels_of(A, 0, A.size) + labels_of(B, 0, B.size))
        S = FinSetObj(A.size + B.size, (labs,))
        return S, (tuple(range(A.size)),), (tuple(range(A.size, A.size + B.size)),)

    def quotient(self, X, rel):
        q, n = classes_of(X.size, rel[0])
        labs = labels_of(X, 0, X.size)
        out = [None] * n
        for i, c in enumerate(q):
            if out[c] is None:
                out[c] = labs[i]
        return FinSetObj(n, (tuple(out),)), (q,)

    def pullback_apex(self, A, B, pairs):
        la, lb = labels_of(A, 0, A.size), labels_of(B, 0, B.size)
        return FinSetObj(len(pairs[0]), (tuple(f"({la[a]},{lb[b]})" for a, b in pairs[0]),))

    def initial(self):
        return FinSetObj(0)

    def terminal(self):
        return FinSetObj(1)

    def canonical_key(self, obj):
        return (obj.size,)

    def labelled_objects(self, bound):
        for n in range(bound + 1):
            yield FinSetObj(n)

    def subobject_keeps(self, X):
        for mask in range(1 << X.size):
            keep = [i for i in range(X.size) if mask >> i & 1]
            yield self.restrict(X, [keep])


FINSET = FinSetCategory()
