"""Directed multigraphs and their full subcategory of acyclic graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb, factorial

from ..core import ApexOutsideCategory, NoSuchObject, NotClosed
from .base import FlatCategory, classes_of, injective_choices, labels_of, narrow, primed


@dataclass(frozen=True)
class GraphObj:
    nv: int
    src: tuple
    tgt: tuple
    labels: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def ne(self) -> int:
        return len(self.src)

    @property
    def category(self):
        return GRAPH

    def edges(self):
        return zip(self.src, self.tgt)


@dataclass(frozen=True)
class DagObj(GraphObj):
    @property
    def category(self):
        return DAG


def find_cycle(nv: int, src, tgt) -> list[int] | None:
    """Vertices of some directed cycle, or ``None`` when the graph is acyclic."""
    out = [[] for _ in range(nv)]
    for s, t in zip(src, tgt):
        out[s].append(t)
    colour = [0] * nv
    stack: list[int] = []

    def dfs(v):
        colour[v] = 1
        stack.append(v)
        for u in out[v]:
            if colour[u] == 1:
                return stack[stack.index(u):] + [u]
            if colour[u] == 0:
                found = dfs(u)
                if found:
                    return found
        colour[v] = 2
        stack.pop()
        return None

    for v in range(nv):
        if colour[v] == 0:
            found = dfs(v)
            if found:
                return found
    return None


class GraphCategory(FlatCategory):
    name = "Graph"
    obj_type = GraphObj

    def make(self, nv, src, tgt, labels=None):
        obj = self.obj_type(nv, tuple(src), tuple(tgt), labels)
        self.admit(obj)
        return obj

    def admit(self, obj):
        pass

    def leaf_sizes(self, obj):
        return (obj.nv, obj.ne)

    def check_object(self, obj):
        if type(obj) is not self.obj_type:
            return [f"not an object of {self}: {obj!r}"]
        bad = []
        if len(obj.src) != len(obj.tgt):
            bad.append("source and target maps have different lengths")
        if any(not 0 <= v < obj.nv for v in obj.src + obj.tgt):
            bad.append("an edge endpoint is not a vertex")
        return bad

    def check_maps(self, dom, cod, maps):
        if len(maps) != 2:
            return ["graph morphisms need a vertex map and an edge map"]
        vm, em = maps
        bad = []
        if len(vm) != dom.nv or any(not 0 <= v < cod.nv for v in vm):
            bad.append("vertex map is not total into the codomain")
        if len(em) != dom.ne or any(not 0 <= e < cod.ne for e in em):
            bad.append("edge map is not total into the codomain")
        if bad:
            return bad
        for e, (s, t) in enumerate(dom.edges()):
            if cod.src[em[e]] != vm[s]:
                bad.append(f"source of edge {e} not preserved")
            if cod.tgt[em[e]] != vm[t]:
                bad.append(f"target of edge {e} not preserved")
        return bad

    def search(self, A, B, allowed=None, injective=False):
        vrow = allowed[0] if allowed else None
        erow = allowed[1] if allowed else None
        bedges: dict[tuple[int, int], list[int]] = {}
        for e, st in enumerate(B.edges()):
            bedges.setdefault(st, []).append(e)
        check_at = [[] for _ in range(A.nv)]
        for s, t in A.edges():
            check_at[max(s, t)].append((s, t))
        vopts = [narrow(range(B.nv), vrow, i) for i in range(A.nv)]
        vmap = [0] * A.nv
        used: set[int] = set()

        def edges():
            eopts = [narrow(bedges.get((vmap[s], vmap[t]), ()), erow, e) for e, (s, t) in enumerate(A.edges())]
            if any(not o for o in eopts):
                return
            vm = tuple(vmap)
            for em in injective_choices(A.ne, eopts, injective):
                yield (vm, em)

        def rec(i):
            if i == A.nv:
                yield from edges()
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
        kv, ke = keep
        pos = {v: i for i, v in enumerate(kv)}
        lost = [e for e in ke if X.src[e] not in pos or X.tgt[e] not in pos]
        if lost:
            raise NotClosed("kept edges lose an endpoint", witness={"edges": lost})
        lv, le = labels_of(X, 0, X.nv), labels_of(X, 1, X.ne)
        S = self.make(
            len(kv),
            [pos[X.src[e]] for e in ke],
            [pos[X.tgt[e]] for e in ke],
            (tuple(lv[v] for v in kv), tuple(le[e] for e in ke)),
        )
        return S, (tuple(kv), tuple(ke))

    def coproduct(self, A, B):
        n = A.nv
        labels = (
            primed(labels_of(A, 0, A.nv) + labels_of(B, 0, B.nv)),
            primed(labels_of(A, 1, A.ne) + labels_of(B, 1, B.ne)),
        )
        S = self.make(
            A.nv + B.nv,
            A.src + tuple(s + n for s in B.src),
            A.tgt + tuple(t + n for t in B.tgt),
            labels,
        )
        i1 = (tuple(range(A.nv)), tuple(range(A.ne)))
        i2 = (tuple(range(A.nv, A.nv + B.nv)), tuple(range(A.ne, A.ne + B.ne)))
        return S, i1, i2

    def quotient(self, X, rel):
        vrel, erel = list(rel[0]), rel[1]
        eq, ne = classes_of(X.ne, erel)
        rep: dict[int, int] = {}
        for e, c in enumerate(eq):
            if c in rep:
                r = rep[c]
                vrel.append((X.src[r], X.src[e]))
                vrel.append((X.tgt[r], X.tgt[e]))
            else:
                rep[c] = e
        vq, nv = classes_of(X.nv, vrel)
        lv, le = labels_of(X, 0, X.nv), labels_of(X, 1, X.ne)
        vlab = [None] * nv
        for v, c in enumerate(vq):
            if vlab[c] is None:
                vlab[c] = lv[v]
        src = [vq[X.src[rep[c]]] for c in range(ne)]
        tgt = [vq[X.tgt[rep[c]]] for c in range(ne)]
        elab = tuple(le[rep[c]] for c in range(ne))
        self.guard_quotient(nv, src, tgt, X, vq)
        return self.make(nv, src, tgt, (tuple(vlab), elab)), (vq, eq)

    def guard_quotient(self, nv, src, tgt, X, vq):
        pass

    def pullback_apex(self, A, B, pairs):
        vpairs, epairs = pairs
        idx = {p: i for i, p in enumerate(vpairs)}
        src = [idx[(A.src[e], B.src[f])] for e, f in epairs]
        tgt = [idx[(A.tgt[e], B.tgt[f])] for e, f in epairs]
        lav, lbv = labels_of(A, 0, A.nv), labels_of(B, 0, B.nv)
        lae, lbe = labels_of(A, 1, A.ne), labels_of(B, 1, B.ne)
        labels = (
            tuple(f"({lav[a]},{lbv[b]})" for a, b in vpairs),
            tuple(f"({lae[a]},{lbe[b]})" for a, b in epairs),
        )
        return self.make(len(vpairs), src, tgt, labels)

    def initial(self):
        return self.make(0, (), ())

    def terminal(self):
        return self.make(1, (0,), (0,))

    def canonical_key(self, obj):
        best = None
        for perm in itertools.permutations(range(obj.nv)):
            key = tuple(sorted((perm[s], perm[t]) for s, t in obj.edges()))
            if best is None or key < best:
                best = key
        return (obj.nv, obj.ne, best)

    def pair_pool(self, nv):
        return list(itertools.product(range(nv), repeat=2))

    def labelled_objects(self, bound):
        for nv in range(bound + 1):
            pool = self.pair_pool(nv)
            for ne in range(bound + 1):
                for es in itertools.combinations_with_replacement(pool, ne):
                    src = tuple(s for s, _ in es)
                    tgt = tuple(t for _, t in es)
                    if self.acceptable(nv, src, tgt):
                        yield self.obj_type(nv, src, tgt)

    def acceptable(self, nv, src, tgt):
        return True

    def estimate(self, bound):
        total = 0
        for nv in range(bound + 1):
            pool = len(self.pair_pool(nv))
            for ne in range(bound + 1):
                if pool:
                    total += comb(pool + ne - 1, ne) * factorial(nv)
                elif ne == 0:
                    total += factorial(nv)
        return total

    def subobject_keeps(self, X):
        for vmask in range(1 << X.nv):
            kv = [v for v in range(X.nv) if vmask >> v & 1]
            inside = [e for e, (s, t) in enumerate(X.edges()) if vmask >> s & 1 and vmask >> t & 1]
            for emask in range(1 << len(inside)):
                ke = [e for i, e in enumerate(inside) if emask >> i & 1]
                yield self.restrict(X, (kv, ke))


class DagCategory(GraphCategory):
    name = "DAG"
    obj_type = DagObj

    def check_object(self, obj):
        bad = super().check_object(obj)
        if not bad:
            cyc = find_cycle(obj.nv, obj.src, obj.tgt)
            if cyc:
                bad.append(f"cycle through vertices {cyc}")
        return bad

    def guard_quotient(self, nv, src, tgt, X, vq):
        cyc = find_cycle(nv, src, tgt)
        if cyc:
            raise ApexOutsideCategory(
                "colimit creates a directed cycle", witness={"cycle": cyc}
            )

    def terminal(self):
        raise NoSuchObject("DAG has no terminal object: the one-loop graph is cyclic")

    def pair_pool(self, nv):
        return [(s, t) for s in range(nv) for t in range(nv) if s != t]

    def acceptable(self, nv, src, tgt):
        return find_cycle(nv, src, tgt) is None


GRAPH = GraphCategory()
DAG = DagCategory()
