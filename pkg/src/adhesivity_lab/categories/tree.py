"""Finite tree orders, stored as forests.

A finite partial order in which every down-set ``{e' | e' <= e}`` is a chain is
exactly a forest: each element has at most one immediate predecessor. Objects
keep that predecessor as ``parent[e]`` (``-1`` for minimal elements).

Arrows are maps that send minimal elements to minimal elements and commute with
``parent``. They are monotone and preserve each element's chain of
predecessors level by level, which makes the category the presheaf topos on the
natural-number order (the reading needed for the forgetful functor to Set to
preserve pushouts in the hierarchical-graph construction).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import NoSuchObject, NotClosed
from .base import FlatCategory, classes_of, injective_choices, labels_of, narrow, primed


@dataclass(frozen=True)
class TreeObj:
    parent: tuple
    labels: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def category(self):
        return TREE

    @property
    def size(self) -> int:
        return len(self.parent)

    def leq(self, a: int, b: int) -> bool:
        """``a <= b`` in the tree order, i.e. ``a`` is ``b`` or one of its ancestors."""
        while b != -1:
            if a == b:
                return True
            b = self.parent[b]
        return False

    def depth(self, e: int) -> int:
        d = 0
        while self.parent[e] != -1:
            e = self.parent[e]
            d += 1
        return d


def tree_from_order(n: int, leq_pairs) -> TreeObj:
    """Build a tree order from the pairs ``(a, b)`` with ``a <= b`` (reflexive pairs optional)."""
    below = [set() for _ in range(n)]
    for a, b in leq_pairs:
        if a != b:
            below[b].add(a)
    parent = []
    for e in range(n):
        preds = below[e]
        for a in preds:
            for b in preds:
                if a != b and b not in below[a] and a not in below[b]:
                    raise ValueError(f"predecessors of {e} are not totally ordered")
        # the immediate predecessor has the largest down-set
        parent.append(max(preds, key=lambda a: len(below[a])) if preds else -1)
    obj = TreeObj(tuple(parent))
    if any(set(a for a in range(n) if a != b and obj.leq(a, b)) != below[b] for b in range(n)):
        raise ValueError("relation is not a tree order (not transitive or not antisymmetric)")
    return obj


def _order(obj: TreeObj) -> list[int]:
    """Elements listed so that every parent precedes its children."""
    return sorted(range(obj.size), key=obj.depth)


class TreeCategory(FlatCategory):
    name = "Tree"

    def leaf_sizes(self, obj):
        return (obj.size,)

    def check_object(self, obj):
        if not isinstance(obj, TreeObj):
            return [f"not a tree order: {obj!r}"]
        n = obj.size
        if any(not -1 <= p < n for p in obj.parent):
            return ["parent is not an element"]
        for e in range(n):
            seen = set()
            while e != -1:
                if e in seen:
                    return ["parent relation has a cycle"]
                seen.add(e)
                e = obj.parent[e]
        return []

    def check_maps(self, dom, cod, maps):
        if len(maps) != 1 or len(maps[0]) != dom.size:
            return ["map is not total on the domain"]
        (f,) = maps
        if any(not 0 <= x < cod.size for x in f):
            return ["map leaves the codomain"]
        bad = []
        for e, p in enumerate(dom.parent):
            want = -1 if p == -1 else f[p]
            if cod.parent[f[e]] != want:
                bad.append(f"parent of element {e} is not preserved")
        return bad

    def search(self, A, B, allowed=None, injective=False):
        row = allowed[0] if allowed else None
        order = _order(A)
        children: dict[int, list[int]] = {}
        for e, p in enumerate(B.parent):
            children.setdefault(p, []).append(e)
        f = [0] * A.size
        used: set[int] = set()

        def rec(k):
            if k == len(order):
                yield (tuple(f),)
                return
            e = order[k]
            p = A.parent[e]
            opts = narrow(children.get(-1 if p == -1 else f[p], ()), row, e)
            for c in opts:
                if injective and c in used:
                    continue
                f[e] = c
                used.add(c)
                yield from rec(k + 1)
                used.discard(c)

        yield from rec(0)

    def restrict(self, X, keep):
        (k,) = keep
        pos = {e: i for i, e in enumerate(k)}
        lost = [e for e in k if X.parent[e] != -1 and X.parent[e] not in pos]
        if lost:
            raise NotClosed("kept elements lose their predecessor", witness={"elements": lost})
        labs = labels_of(X, 0, X.size)
        parent = tuple(-1 if X.parent[e] == -1 else pos[X.parent[e]] for e in k)
        return TreeObj(parent, (tuple(labs[e] for e in k),)), (tuple(k),)

    def coproduct(self, A, B):
        n = A.size
        parent = A.parent + tuple(-1 if p == -1 else p + n for p in B.parent)
        labels = (primed(labels_of(A, 0, A.size) + labels_of(B, 0, B.size)),)
        return TreeObj(parent, labels), (tuple(range(n)),), (tuple(range(n, n + B.size)),)

    def quotient(self, X, rel):
        pairs = list(rel[0])
        while True:
            q, n = classes_of(X.size, pairs)
            extra = []
            rep: dict[int, int] = {}
            for e, c in enumerate(q):
                r = rep.setdefault(c, e)
                pa, pb = X.parent[r], X.parent[e]
                if (pa == -1) != (pb == -1):
                    raise ValueError("relation identifies a minimal element with a non-minimal one")
                if pa != -1 and q[pa] != q[pb]:
                    extra.append((pa, pb))
            if not extra:
                break
            pairs += extra
        labs = labels_of(X, 0, X.size)
        out = [None] * n
        parent = [None] * n
        for e, c in enumerate(q):
            if out[c] is None:
                out[c] = labs[e]
                parent[c] = -1 if X.parent[e] == -1 else q[X.parent[e]]
        return TreeObj(tuple(parent), (tuple(out),)), (q,)

    def pullback_apex(self, A, B, pairs):
        (ps,) = pairs
        idx = {p: i for i, p in enumerate(ps)}
        parent = tuple(
            -1 if A.parent[a] == -1 else idx[(A.parent[a], B.parent[b])] for a, b in ps
        )
        la, lb = labels_of(A, 0, A.size), labels_of(B, 0, B.size)
        return TreeObj(parent, (tuple(f"({la[a]},{lb[b]})" for a, b in ps),))

    def initial(self):
        return TreeObj(())

    def terminal(self):
        raise NoSuchObject("Tree has no finite terminal object: it would be an infinite chain")

    def code(self, obj, e=-1):
        kids = [c for c, p in enumerate(obj.parent) if p == e]
        return tuple(sorted(self.code(obj, c) for c in kids))

    def canonical_key(self, obj):
        return (obj.size, self.code(obj))

    def labelled_objects(self, bound):
        for n in range(bound + 1):
            for parent in _parent_tuples(n):
                yield TreeObj(parent)

    def estimate(self, bound):
        total, f = 0, 1
        for n in range(bound + 1):
            total += f
            f *= n + 1
        return total

    def subobject_keeps(self, X):
        for mask in range(1 << X.size):
            keep = [e for e in range(X.size) if mask >> e & 1]
            if all(X.parent[e] == -1 or mask >> X.parent[e] & 1 for e in keep):
                yield self.restrict(X, [keep])


def _parent_tuples(n):
    # element i may only hang below an earlier element; this reaches every forest shape
    choices = [range(-1, i) for i in range(n)]
    return injective_choices(n, choices, False)


TREE = TreeCategory()
