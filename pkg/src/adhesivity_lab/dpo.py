"""Double-pushout rewriting: rules, matches, pushout complements by deletion, rewrite steps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .categories import SGRAPH, FlatCategory
from .core import AdhesivityError, Morphism, NotClosed, Square, compose, leaves, make_morphism
from .limits import factor_through_mono, is_pullback, is_pushout, pushout


class RuleError(AdhesivityError):
    pass


class NoComplementError(AdhesivityError):
    def __init__(self, message: str, defect=None):
        self.defect = defect
        super().__init__(message)


@dataclass(frozen=True)
class Rule:
    l: Morphism
    r: Morphism
    name: str = ""

    def __post_init__(self):
        if self.l.dom != self.r.dom:
            raise RuleError("both legs of a rule start at the interface K")

    @property
    def L(self):
        return self.l.cod

    @property
    def K(self):
        return self.l.dom

    @property
    def R(self):
        return self.r.cod

    def check(self, M) -> None:
        if not M(self.l):
            raise RuleError(f"left leg of rule {self.name or '?'} is not in {M}")

    def inverse(self) -> "Rule":
        return Rule(self.r, self.l, f"{self.name}^-1" if self.name else "")


class Complement(NamedTuple):
    D: object
    k: Morphism
    d: Morphism


@dataclass(frozen=True)
class NoComplement:
    defect: str
    witness: object = None

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class RewriteStep:
    rule: Rule
    match: Morphism
    complement: Morphism
    comatch: Morphism
    left: Square
    right: Square

    @property
    def host(self):
        return self.match.cod

    @property
    def result(self):
        return self.comatch.cod


def find_matches(rule: Rule, G, N=None) -> list[Morphism]:
    """All arrows ``L -> G`` in ``N``, ordered by their leaf maps."""
    cat = rule.L.category
    cat.require(G)
    out = [f for f in cat.homs(rule.L, G) if N is None or N(f)]
    return sorted(out, key=leaves)


def _deletion_keep(l: Morphism, g: Morphism) -> list[list[int]]:
    keep = []
    for gm, lm, n in zip(leaves(g), leaves(compose(g, l)), g.cat.leaf_sizes(g.cod)):
        doomed = set(gm) - set(lm)
        keep.append([x for x in range(n) if x not in doomed])
    return keep


def _candidate(l: Morphism, g: Morphism):
    cat, G = g.cat, g.cod
    keep = _deletion_keep(l, g)
    if cat == SGRAPH:
        kept = set(keep[0])
        gl = compose(g, l)
        preserved = {(gl(s), gl(t)) for s, t in l.dom.edges}
        lost = {(g(s), g(t)) for s, t in l.cod.edges} - preserved
        edges = [e for e in G.edges if e[0] in kept and e[1] in kept and e not in lost]
        return cat.with_edges(G, keep[0], edges)
    return cat.restrict(G, cat.unflatten(G, G, tuple(tuple(k) for k in keep)))


def pushout_complement(l: Morphism, g: Morphism) -> Complement | NoComplement:
    """Delete ``g(L) \\ g(l(K))`` from ``G`` and keep the result only if the square is a pushout."""
    cat = g.cat
    if l.cod != g.dom:
        raise RuleError("the match must start at the rule's left-hand side")
    if not isinstance(cat, FlatCategory):
        return NoComplement(f"deletion is not available in {cat}")
    try:
        D, maps = _candidate(l, g)
    except NotClosed as exc:
        return NoComplement(f"dangling: {exc}", exc.witness)
    d = make_morphism(D, g.cod, maps)
    k = factor_through_mono(compose(g, l), d)
    if k is None:
        return NoComplement("the match identifies a preserved element with a deleted one", g)
    if not is_pushout(Square(l, k, g, d)):
        return NoComplement("candidate complement does not form a pushout", g)
    return Complement(D, k, d)


def all_complements(l: Morphism, g: Morphism, bound: int):
    """Brute force: every ``(D, k, d)`` with ``D`` up to ``bound`` making a pushout square."""
    cat = g.cat
    target = compose(g, l)
    for D in cat.enumerate(bound):
        for d in cat.homs(D, g.cod):
            for k in cat.homs(l.dom, D):
                if leaves(compose(d, k)) == leaves(target) and is_pushout(Square(l, k, g, d)):
                    yield Complement(D, k, d)


def rewrite(rule: Rule, match: Morphism, check_pullback: bool = False) -> tuple[object, RewriteStep]:
    """Apply ``rule`` at ``match``; both squares of the step are verified pushouts."""
    comp = pushout_complement(rule.l, match)
    if not comp:
        raise NoComplementError(comp.defect, comp)
    D, k, d = comp
    po = pushout(rule.r, k)
    left = Square(rule.l, k, match, d)
    right = Square(rule.r, k, po.inj1, po.inj2)
    if not is_pushout(right):
        raise AdhesivityError("right square failed pushout verification")
    if check_pullback and not is_pullback(left):
        raise AdhesivityError("left square is not a pullback")
    return po.apex, RewriteStep(rule, match, d, po.inj1, left, right)


def rewrite_all(rule: Rule, G, N=None) -> list[tuple[Morphism, object]]:
    """``(match, result)`` for every match; ``result`` is a RewriteStep or a NoComplement."""
    out = []
    for g in find_matches(rule, G, N):
        comp = pushout_complement(rule.l, g)
        out.append((g, rewrite(rule, g)[1] if comp else comp))
    return out
