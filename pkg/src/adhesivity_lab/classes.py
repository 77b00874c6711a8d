"""Morphism classes as decidable predicates, and bounded checks of the preadhesive axioms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .categories import DAG, GRAPH, SGRAPH, CommaCategory, ProductCategory, parse_category
from .categories.finset import FINSET
from .core import (
    AdhesivityError,
    BoundedVerdict,
    Morphism,
    Square,
    classify,
    compose,
    first_failure,
    inverse,
    is_mono,
    is_split_mono,
    leaves,
)
from .limits import is_regular_mono, pullback, pushout


class ClassMismatch(AdhesivityError):
    pass


class MorphismClass:
    """A named membership predicate; ``cls(f)`` decides whether ``f`` belongs to it."""

    name = "?"

    def __init__(self):
        self._cache: dict = {}

    def accepts(self, cat) -> bool:
        return True

    def decide(self, f: Morphism) -> bool:
        raise NotImplementedError

    def __call__(self, f: Morphism) -> bool:
        try:
            return self._cache[f]
        except KeyError:
            pass
        if not self.accepts(f.cat):
            raise ClassMismatch(f"class {self.name} does not apply to {f.cat}")
        out = self._cache[f] = bool(self.decide(f))
        return out

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other):
        return isinstance(other, MorphismClass) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class _Predicate(MorphismClass):
    def __init__(self, name: str, test: Callable[[Morphism], bool], cats=None):
        super().__init__()
        self.name = name
        self._test = test
        self._cats = cats

    def accepts(self, cat):
        return self._cats is None or cat in self._cats

    def decide(self, f):
        return self._test(f)


def _downward_closed(f: Morphism) -> bool:
    if not is_mono(f):
        return False
    cod = f.cod
    vimg = set(leaves(f)[0])
    if f.cat == SGRAPH:
        pos = {v: i for i, v in enumerate(f.maps[0])}
        dom_edges = set(f.dom.edges)
        return all(
            s in pos and (pos[s], pos[t]) in dom_edges for s, t in cod.edges if t in vimg
        )
    eimg = set(f.maps[1])
    return all(e in eimg for e, t in enumerate(cod.tgt) if t in vimg)


MOR = _Predicate("Mor", lambda f: True)
MONO = _Predicate("Mono", is_mono)
REG = _Predicate("Reg", is_regular_mono)
SPLIT = _Predicate("Split", is_split_mono)
DCL = _Predicate("Dcl", _downward_closed, cats=(GRAPH, SGRAPH, DAG))
DCL_D = _Predicate("Dcl_d", _downward_closed, cats=(DAG,))


class Intersection(MorphismClass):
    def __init__(self, *parts: MorphismClass):
        super().__init__()
        self.parts = parts
        self.name = "&".join(p.name for p in parts)

    def accepts(self, cat):
        return all(p.accepts(cat) for p in self.parts)

    def decide(self, f):
        return all(p(f) for p in self.parts)


class ProductClass(MorphismClass):
    """Componentwise membership in a product category."""

    def __init__(self, first: MorphismClass, second: MorphismClass):
        super().__init__()
        self.first, self.second = first, second
        self.name = f"{first.name}*{second.name}"

    def accepts(self, cat):
        return isinstance(cat, ProductCategory) and self.first.accepts(cat.first) and self.second.accepts(cat.second)

    def decide(self, f):
        return self.first(f.maps[0]) and self.second(f.maps[1])


class CommaClass(MorphismClass):
    """``(h, k)`` with ``h`` in the left class and ``k`` in the right class (over finite sets)."""

    def __init__(self, left: MorphismClass, right: MorphismClass):
        super().__init__()
        self.left, self.right = left, right
        self.name = f"{left.name}*{right.name}"

    def accepts(self, cat):
        return isinstance(cat, CommaCategory) and self.left.accepts(cat.left) and self.right.accepts(FINSET)

    def decide(self, f):
        return self.left(f.maps[0]) and self.right(f.maps[1])


BASIC = {"mor": MOR, "mono": MONO, "reg": REG, "split": SPLIT, "dcl": DCL, "dcl-d": DCL_D}


def _split_top(token: str, sep: str) -> list[str]:
    depth, start, parts = 0, 0, []
    for i, ch in enumerate(token):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(token[start:i])
            start = i + 1
    parts.append(token[start:])
    return [p.strip() for p in parts]


def parse_class(token: str, cat=None) -> MorphismClass:
    """Parse CLI tokens: ``mono``, ``reg``, ``split``, ``dcl``, ``dcl-d``, ``mor``,
    ``a*b`` for product/comma classes and ``a&b`` for intersections."""
    if isinstance(cat, str):
        cat = parse_category(cat)
    token = token.strip()
    if token.startswith("(") and token.endswith(")"):
        return parse_class(token[1:-1], cat)
    parts = _split_top(token, "&")
    if len(parts) > 1:
        return Intersection(*(parse_class(p, cat) for p in parts))
    parts = _split_top(token, "*")
    if len(parts) == 2:
        if isinstance(cat, ProductCategory):
            return ProductClass(parse_class(parts[0], cat.first), parse_class(parts[1], cat.second))
        if isinstance(cat, CommaCategory):
            return CommaClass(parse_class(parts[0], cat.left), parse_class(parts[1], FINSET))
        raise ClassMismatch(f"composite class {token!r} needs a product or comma category, got {cat}")
    if len(parts) > 2:
        raise ClassMismatch(f"composite classes take exactly two parts: {token!r}")
    key = token.lower()
    if key not in BASIC:
        raise ClassMismatch(f"unknown morphism class {token!r}")
    cls = BASIC[key]
    if cat is not None and not cls.accepts(cat):
        raise ClassMismatch(f"class {cls.name} does not apply to {cat}")
    return cls


def member(cls: MorphismClass, f: Morphism) -> bool:
    return cls(f)


AXIOMS = (
    "iso_closure",
    "composition",
    "decomposition",
    "n_m_decomposition",
    "pullback_stability",
    "pushout_stability",
)


@dataclass
class PreadhesiveReport:
    M: MorphismClass
    N: MorphismClass
    category: object
    bound: int
    verdicts: dict = field(default_factory=dict)
    skipped_pushouts: int = 0

    @property
    def holds(self) -> bool:
        return all(v.holds for v in self.verdicts.values())


def _all_homs(cat, bound):
    objs = cat.enumerate(bound)
    return objs, {(A, B): list(cat.homs(A, B)) for A in objs for B in objs}


def validate_preadhesive(M: MorphismClass, N: MorphismClass, cat, sample_bound: int = 3) -> PreadhesiveReport:
    """Check every preadhesive axiom over all arrows between objects up to ``sample_bound``."""
    if isinstance(cat, str):
        cat = parse_category(cat)
    for cls in (M, N):
        if not cls.accepts(cat):
            raise ClassMismatch(f"class {cls.name} does not apply to {cat}")
    objs, homs = _all_homs(cat, sample_bound)
    arrows = [f for fs in homs.values() for f in fs]
    report = PreadhesiveReport(M, N, cat, sample_bound)
    b = sample_bound

    def iso_closure():
        for f in arrows:
            if inverse(f) is not None:
                for cls in (M, N):
                    if not cls(f):
                        yield BoundedVerdict.fails((f,), f"isomorphism outside {cls.name}", b)
                        return
        yield BoundedVerdict.holds_up_to(b, len(arrows))

    def triples():
        for A, B, C in itertools.product(objs, repeat=3):
            for f in homs[(A, B)]:
                for g in homs[(B, C)]:
                    yield f, g, compose(g, f)

    def composition():
        n = 0
        for f, g, gf in triples():
            n += 1
            for cls in (M, N):
                if cls(f) and cls(g) and not cls(gf):
                    yield BoundedVerdict.fails((g, f), f"{cls.name} not closed under composition", b)
                    return
        yield BoundedVerdict.holds_up_to(b, n)

    def decomposition():
        n = 0
        for f, g, gf in triples():
            n += 1
            for cls in (M, N):
                if cls(gf) and cls(g) and not cls(f):
                    yield BoundedVerdict.fails((g, f), f"{cls.name} not closed under decomposition", b)
                    return
        yield BoundedVerdict.holds_up_to(b, n)

    def n_m_decomposition():
        n = 0
        for f, g, gf in triples():
            n += 1
            if N(gf) and M(g) and not N(f):
                yield BoundedVerdict.fails((g, f), f"{N.name} not closed under {M.name}-decomposition", b)
                return
        yield BoundedVerdict.holds_up_to(b, n)

    def pullback_stability():
        n = 0
        for (A, C), ms in homs.items():
            for B in objs:
                for g in homs[(B, C)]:
                    for m in ms:
                        for cls in (M, N):
                            if not cls(m):
                                continue
                            n += 1
                            res = pullback(m, g)
                            if not cls(res.proj2):
                                sq = Square(res.proj1, res.proj2, m, g)
                                yield BoundedVerdict.fails(sq, f"{cls.name} not stable under pullback", b)
                                return
        yield BoundedVerdict.holds_up_to(b, n)

    def pushout_stability():
        n = 0
        for (C, A), ms in homs.items():
            for B in objs:
                for g in homs[(C, B)]:
                    for m in ms:
                        for cls in (M, N):
                            if not cls(m):
                                continue
                            try:
                                res = pushout(m, g)
                            except AdhesivityError:
                                report.skipped_pushouts += 1
                                continue
                            n += 1
                            if not cls(res.inj2):
                                sq = Square(m, g, res.inj1, res.inj2)
                                yield BoundedVerdict.fails(sq, f"{cls.name} not stable under pushout", b)
                                return
        yield BoundedVerdict.holds_up_to(b, n)

    checks = {
        "iso_closure": iso_closure,
        "composition": composition,
        "decomposition": decomposition,
        "n_m_decomposition": n_m_decomposition,
        "pullback_stability": pullback_stability,
        "pushout_stability": pushout_stability,
    }
    for name in AXIOMS:
        report.verdicts[name] = first_failure(checks[name](), b)
    if not all(classify(f).is_mono for f in arrows if M(f)):
        bad = next(f for f in arrows if M(f) and not classify(f).is_mono)
        report.verdicts["m_monos"] = BoundedVerdict.fails((bad,), f"{M.name} contains a non-mono", b)
    else:
        report.verdicts["m_monos"] = BoundedVerdict.holds_up_to(b, len(arrows))
    return report
