"""Subobject posets, unions computed as pushouts over pullbacks, and a brute-force join oracle."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .core import (
    AdhesivityError,
    BoundTooLarge,
    Morphism,
    Square,
    compose,
    is_mono,
    leaf_sizes,
    same,
)
from .limits import factor_through_mono, is_pullback, is_pushout, pullback, pushout

SUBOBJECT_CEILING = 1 << 17


class HypothesisViolation(AdhesivityError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NotInLattice(AdhesivityError):
    pass


def leq(a: Morphism, b: Morphism) -> bool:
    """``[a] <= [b]``: ``a`` factors through the mono ``b``."""
    return factor_through_mono(a, b) is not None


def equivalent(a: Morphism, b: Morphism) -> bool:
    return leq(a, b) and leq(b, a)


@dataclass(frozen=True)
class SubobjectLattice:
    carrier: object
    elements: tuple
    class_filter: object = None

    @cached_property
    def order(self) -> tuple:
        return tuple(tuple(leq(a, b) for b in self.elements) for a in self.elements)

    def leq(self, i: int, j: int) -> bool:
        return self.order[i][j]

    def index(self, m: Morphism) -> int:
        if m.cod != self.carrier:
            raise NotInLattice("morphism does not land in the carrier")
        for i, e in enumerate(self.elements):
            if equivalent(m, e):
                return i
        raise NotInLattice(f"{m!r} is not one of the lattice elements")

    def __len__(self) -> int:
        return len(self.elements)


def subobject_poset(X, class_filter=None) -> SubobjectLattice:
    """Every subobject of ``X`` (one inclusion per class), optionally restricted to a class."""
    out = []
    for count, s in enumerate(X.category.subobjects(X)):
        if count >= SUBOBJECT_CEILING:
            raise BoundTooLarge(f"more than {SUBOBJECT_CEILING} subobjects")
        if class_filter is None or class_filter(s):
            out.append(s)
    return SubobjectLattice(X, tuple(out), class_filter)


@dataclass(frozen=True)
class UnionDiagram:
    m: Morphism
    n: Morphism
    P: object
    p1: Morphism
    p2: Morphism
    U: object
    u1: Morphism
    u2: Morphism
    u: Morphism

    def pullback_square(self) -> Square:
        return Square(self.p1, self.p2, self.m, self.n)

    def pushout_square(self) -> Square:
        return Square(self.p1, self.p2, self.u2, self.u1)


def union_via_pushout(m: Morphism, n: Morphism, M=None, N=None) -> UnionDiagram:
    """Pull ``m`` and ``n`` back, push the projections out and return the mediating ``u``.

    ``M`` and ``N`` are optional classes checked against ``m`` and ``n``.
    """
    if m.cod != n.cod:
        raise HypothesisViolation("m and n need a common codomain", witness=(m, n))
    if not (is_mono(m) and is_mono(n)):
        raise HypothesisViolation("m and n must be monos", witness=(m, n))
    if M is not None and not M(m):
        raise HypothesisViolation(f"m is not in {M}", witness=(m, n))
    if N is not None and not N(n):
        raise HypothesisViolation(f"n is not in {N}", witness=(m, n))
    pb = pullback(m, n)
    try:
        po = pushout(pb.proj1, pb.proj2)
    except AdhesivityError as exc:
        raise HypothesisViolation(f"the projections have no pushout: {exc}", witness=(m, n)) from exc
    u = po.mediator(m, n)
    if u is None or not is_mono(u):
        raise HypothesisViolation("the mediating arrow is not a mono", witness=(m, n))
    return UnionDiagram(m, n, pb.apex, pb.proj1, pb.proj2, po.apex, po.inj2, po.inj1, u)


def join_oracle(m: Morphism, n: Morphism, lattice: SubobjectLattice) -> Morphism | None:
    """Least upper bound by scanning the whole poset; ``None`` when there is none.

    A least upper bound is in particular a smallest one, so only the upper bound
    with fewest elements needs to be compared against the others.
    """
    if m.cod != lattice.carrier or n.cod != lattice.carrier:
        raise NotInLattice("arguments must land in the carrier")
    uppers = [e for e in lattice.elements if leq(m, e) and leq(n, e)]
    if not uppers:
        return None
    best = min(uppers, key=lambda e: sum(leaf_sizes(e.dom)))
    return best if all(leq(best, e) for e in uppers) else None


def check_union(d: UnionDiagram) -> list[str]:
    """Structural invariants of a union diagram; empty when all hold."""
    bad = []
    if not is_pullback(d.pullback_square()):
        bad.append("outer square is not a pullback")
    if not is_pushout(d.pushout_square()):
        bad.append("inner square is not a pushout")
    if not same(compose(d.u, d.u1), d.n):
        bad.append("u ∘ u1 differs from n")
    if not same(compose(d.u, d.u2), d.m):
        bad.append("u ∘ u2 differs from m")
    return bad
