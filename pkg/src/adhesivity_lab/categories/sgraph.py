"""Simple graphs: a vertex set with an edge relation ``E ⊆ V×V`` (loops allowed)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial

from ..core import NotClosed
from .base import FlatCategory, classes_of, labels_of, narrow, primed


@dataclass(frozen=True)
class SGraphObj:
    nv: int
    edges: tuple
    labels: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def category(self):
        return SGRAPH

    @property
    def ne(self) -> int:
        return len(self.edges)


def sgraph(nv: int, edges, labels=None) -> SGraphObj:
    return SGraphObj(nv, tuple(sorted(set(map(tuple, edges)))), labels)


class SGraphCategory(FlatCategory):
    name = "SGraph"

    def leaf_sizes(self, obj):
        return (obj.nv,)

    def check_object(self, obj):
        if not isinstance(obj, SGraphObj):
            return [f"not a simple graph: {obj!r}"]
        bad = []
        if any(not (0 <= s < obj.nv and 0 <= t < obj.nv) for s, t in obj.edges):
            bad.append("an edge endpoint is not a vertex")
        if list(obj.edges) != sorted(set(obj.edges)):
            bad.append("edge relation has duplicates or is not sorted")
        return bad

    def check_maps(self, dom, cod, maps):
        if len(maps) != 1 or len(maps[0]) != dom.nv:
            return ["vertex map is not total on the domain"]
        (vm,) = maps
        if any(not 0 <= v < cod.nv for v in vm):
            return ["vertex map leaves the codomain"]
        target = set(cod.edges)
        return [f"edge {(s, t)} is not preserved" for s, t in dom.edges if (vm[s], vm[t]) not in target]

    def search(self, A, B, allowed=None, injective=False):
        row = allowed[0] if allowed else None
        bedges = set(B.edges)
        check_at = [[] for _ in range(A.nv)]
        for s, t in A.edges:
            check_at[max(s, t)].append((s, t))
        vopts = [narrow(range(B.nv), row, i) for i in range(A.nv)]
        vmap = [0] * A.nv
        used: set[int] = set()

        def rec(i):
            if i == A.nv:
                yield (tuple(vmap),)
                return
            for c in vopts[i]:
                if injective and c in used:
                    continue
                vmap[i] = c
                if all((vmap[s], vmap[t]) in bedges for s, t in check_at[i]):
                    used.add(c)
                    yield from rec(i + 1)
                    used.discard(c)

        yield from rec(0)

    def restrict(self, X, keep):
        (kv,) = keep
        pos = {v: i for i, v in enumerate(kv)}
        lv = labels_of(X, 0, X.nv)
        edges = [(pos[s], pos[t]) for s, t in X.edges if s in pos and t in pos]
        return sgraph(len(kv), edges, (tuple(lv[v] for v in kv),)), (tuple(kv),)

    def coproduct(self, A, B):
        n = A.nv
        edges = list(A.edges) + [(s + n, t + n) for s, t in B.edges]
        labels = (primed(labels_of(A, 0, A.nv) + labels_of(B, 0, B.nv)),)
        S = sgraph(A.nv + B.nv, edges, labels)
        return S, (tuple(range(A.nv)),), (tuple(range(n, n + B.nv)),)

    def quotient(self, X, rel):
        vq, nv = classes_of(X.nv, rel[0])
        lv = labels_of(X, 0, X.nv)
        vlab = [None] * nv
        for v, c in enumerate(vq):
            if vlab[c] is None:
                vlab[c] = lv[v]
        edges = [(vq[s], vq[t]) for s, t in X.edges]
        return sgraph(nv, edges, (tuple(vlab),)), (vq,)

    def pullback_apex(self, A, B, pairs):
        (vpairs,) = pairs
        ea, eb = set(A.edges), set(B.edges)
        edges = [
            (i, j)
            for i, (a, b) in enumerate(vpairs)
            for j, (a2, b2) in enumerate(vpairs)
            if (a, a2) in ea and (b, b2) in eb
        ]
        la, lb = labels_of(A, 0, A.nv), labels_of(B, 0, B.nv)
        return sgraph(len(vpairs), edges, (tuple(f"({la[a]},{lb[b]})" for a, b in vpairs),))

    def initial(self):
        return sgraph(0, ())

    def terminal(self):
        return sgraph(1, [(0, 0)])

    def canonical_key(self, obj):
        best = None
        for perm in itertools.permutations(range(obj.nv)):
            key = tuple(sorted((perm[s], perm[t]) for s, t in obj.edges))
            if best is None or key < best:
                best = key
        return (obj.nv, obj.ne, best)

    def labelled_objects(self, bound):
        for nv in range(bound + 1):
            pool = list(itertools.product(range(nv), repeat=2))
            for mask in range(1 << len(pool)):
                yield sgraph(nv, [p for i, p in enumerate(pool) if mask >> i & 1])

    def estimate(self, bound):
        return sum((1 << (n * n)) * factorial(n) for n in range(bound + 1))

    def subobject_keeps(self, X):
        # Monos need not be induced: every vertex subset with every subset of its induced edges.
        for vmask in range(1 << X.nv):
            kv = [v for v in range(X.nv) if vmask >> v & 1]
            pos = {v: i for i, v in enumerate(kv)}
            inside = [(pos[s], pos[t]) for s, t in X.edges if s in pos and t in pos]
            lv = labels_of(X, 0, X.nv)
            for emask in range(1 << len(inside)):
                es = [e for i, e in enumerate(inside) if emask >> i & 1]
                yield sgraph(len(kv), es, (tuple(lv[v] for v in kv),)), (tuple(kv),)

    def with_edges(self, X, kv, edges):
        """Subgraph on vertices ``kv`` carrying exactly ``edges`` (given in X's numbering)."""
        pos = {v: i for i, v in enumerate(kv)}
        missing = [e for e in edges if e[0] not in pos or e[1] not in pos or tuple(e) not in set(X.edges)]
        if missing:
            raise NotClosed("requested edges are not edges between kept vertices", witness=missing)
        return sgraph(len(kv), [(pos[s], pos[t]) for s, t in edges]), (tuple(kv),)


SGRAPH = SGraphCategory()
