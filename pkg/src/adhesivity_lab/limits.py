"""Finite limits and colimits, kernel/cokernel pairs, codiagonals and universal-property checks.

Squares use the package-wide orientation ``right ∘ top = bottom ∘ left``:

* a pullback of ``f: A → C`` and ``g: B → C`` is returned as
  ``Square(top=p1, left=p2, right=f, bottom=g)``;
* a pushout of ``f: C → A`` and ``g: C → B`` is returned as
  ``Square(top=f, left=g, right=j1, bottom=j2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    AdhesivityError,
    CategoryMismatch,
    CompositionError,
    Morphism,
    Square,
    commutes,
    compose,
    from_leaves,
    identity,
    inverse,
    is_mono,
    leaves,
    leaf_sizes,
    same,
)


class NotCommuting(AdhesivityError):
    pass


@dataclass(frozen=True)
class PullbackResult:
    apex: object
    proj1: Morphism
    proj2: Morphism
    f: Morphism
    g: Morphism

    def square(self) -> Square:
        return Square(self.proj1, self.proj2, self.f, self.g)

    def mediator(self, a: Morphism, b: Morphism) -> Morphism | None:
        """The unique ``u`` with ``proj1 ∘ u = a`` and ``proj2 ∘ u = b``, if ``(a, b)`` is a cone."""
        return pullback_mediator(self.proj1, self.proj2, a, b)


@dataclass(frozen=True)
class PushoutResult:
    apex: object
    inj1: Morphism
    inj2: Morphism
    f: Morphism
    g: Morphism

    def square(self) -> Square:
        return Square(self.f, self.g, self.inj1, self.inj2)

    def mediator(self, a: Morphism, b: Morphism) -> Morphism | None:
        """The unique ``v`` with ``v ∘ inj1 = a`` and ``v ∘ inj2 = b``, if ``(a, b)`` is a cocone."""
        return pushout_mediator(self.inj1, self.inj2, a, b)


@dataclass(frozen=True)
class CodiagonalData:
    f: Morphism
    Q: object
    y1: Morphism
    y2: Morphism
    upsilon: Morphism


def _same_category(*fs: Morphism) -> None:
    cat = fs[0].cat
    for f in fs[1:]:
        if f.cat != cat:
            raise CategoryMismatch(f"{f.cat} differs from {cat}")


def pullback(f: Morphism, g: Morphism) -> PullbackResult:
    _same_category(f, g)
    if f.cod != g.cod:
        raise CompositionError("pullback needs a cospan with a common codomain")
    P, p1, p2 = f.cat.pullback(f, g)
    return PullbackResult(P, p1, p2, f, g)


def pushout(f: Morphism, g: Morphism) -> PushoutResult:
    _same_category(f, g)
    if f.dom != g.dom:
        raise CompositionError("pushout needs a span with a common domain")
    Q, j1, j2 = f.cat.pushout(f, g)
    return PushoutResult(Q, j1, j2, f, g)


def equalizer(f: Morphism, g: Morphism) -> tuple[object, Morphism]:
    _same_category(f, g)
    if f.dom != g.dom or f.cod != g.cod:
        raise CompositionError("equalizer needs a parallel pair")
    return f.cat.equalizer(f, g)


def coequalizer(f: Morphism, g: Morphism) -> tuple[object, Morphism]:
    _same_category(f, g)
    if f.dom != g.dom or f.cod != g.cod:
        raise CompositionError("coequalizer needs a parallel pair")
    return f.cat.coequalizer(f, g)


def pullback_mediator(p1: Morphism, p2: Morphism, a: Morphism, b: Morphism) -> Morphism | None:
    """Mediator into a *canonical* pullback, whose elements are distinct pairs on every sort."""
    if a.dom != b.dom or a.cod != p1.cod or b.cod != p2.cod:
        return None
    rows = []
    for m1, m2, x, y in zip(leaves(p1), leaves(p2), leaves(a), leaves(b)):
        index = {pair: i for i, pair in enumerate(zip(m1, m2))}
        try:
            rows.append(tuple(index[pair] for pair in zip(x, y)))
        except KeyError:
            return None
    return from_leaves(a.dom, p1.dom, rows)


def pushout_mediator(j1: Morphism, j2: Morphism, a: Morphism, b: Morphism) -> Morphism | None:
    """Mediator out of a pushout whose injections are jointly surjective on every sort."""
    if a.cod != b.cod or a.dom != j1.dom or b.dom != j2.dom:
        return None
    rows = []
    for m1, m2, x, y, n in zip(leaves(j1), leaves(j2), leaves(a), leaves(b), leaf_sizes(j1.cod)):
        row: list = [None] * n
        for src, img in ((m1, x), (m2, y)):
            for i, q in enumerate(src):
                if row[q] is None:
                    row[q] = img[i]
                elif row[q] != img[i]:
                    return None
        if any(v is None for v in row):
            return None
        rows.append(tuple(row))
    return from_leaves(j1.cod, a.cod, rows)


def _require_commutes(sq: Square) -> None:
    if not commutes(sq):
        raise NotCommuting("square does not commute")


def is_pullback(sq: Square) -> bool:
    _require_commutes(sq)
    res = pullback(sq.right, sq.bottom)
    u = res.mediator(sq.top, sq.left)
    return u is not None and inverse(u) is not None


def is_pushout(sq: Square) -> bool:
    _require_commutes(sq)
    try:
        res = pushout(sq.top, sq.left)
    except AdhesivityError:
        return False
    v = res.mediator(sq.right, sq.bottom)
    return v is not None and inverse(v) is not None


def kernel_pair(f: Morphism) -> tuple[Square, Morphism]:
    """The pullback of ``f`` along itself and the diagonal ``dom f → K``."""
    res = pullback(f, f)
    d = identity(f.dom)
    return res.square(), res.mediator(d, d)


def cokernel_pair(f: Morphism) -> tuple[Square, Morphism]:
    """The pushout of ``f`` along itself and the codiagonal ``Q → cod f``."""
    res = pushout(f, f)
    d = identity(f.cod)
    return res.square(), res.mediator(d, d)


def codiagonal(f: Morphism) -> CodiagonalData:
    sq, upsilon = cokernel_pair(f)
    return CodiagonalData(f, sq.corner, sq.right, sq.bottom, upsilon)


def factor_through_mono(f: Morphism, m: Morphism) -> Morphism | None:
    """The unique ``g`` with ``m ∘ g = f`` when ``m`` is mono, or ``None``."""
    if f.cod != m.cod:
        return None
    rows = []
    for fm, mm in zip(leaves(f), leaves(m)):
        pos = {v: i for i, v in enumerate(mm)}
        try:
            rows.append(tuple(pos[v] for v in fm))
        except KeyError:
            return None
    return from_leaves(f.dom, m.dom, rows)


def is_regular_mono(f: Morphism) -> bool:
    """``f`` is the equalizer of its own cokernel pair (the test for regularity)."""
    if not is_mono(f):
        return False
    sq, _ = cokernel_pair(f)
    _, e = equalizer(sq.right, sq.bottom)
    g = factor_through_mono(f, e)
    return g is not None and inverse(g) is not None


def initial(cat):
    return cat.initial()


def terminal(cat):
    return cat.terminal()


def iso_between(A, B) -> Morphism | None:
    """Some isomorphism ``A → B``, found by exhaustive injective search."""
    cat = A.category
    if cat.leaf_sizes(A) != cat.leaf_sizes(B):
        return None
    for f in cat.homs(A, B, injective=True):
        if inverse(f) is not None:
            return f
    return None


def universal_pullback(sq: Square, bound: int) -> bool:
    """Exhaustive cone check: every cone from an object up to ``bound`` factors uniquely."""
    _require_commutes(sq)
    cat = sq.top.cat
    for T in cat.enumerate(bound):
        for a in cat.homs(T, sq.top.cod):
            target = compose(sq.right, a)
            for b in cat.homs(T, sq.left.cod):
                if not same(target, compose(sq.bottom, b)):
                    continue
                count = sum(
                    1
                    for u in cat.homs(T, sq.apex)
                    if same(compose(sq.top, u), a) and same(compose(sq.left, u), b)
                )
                if count != 1:
                    return False
    return True


def universal_pushout(sq: Square, bound: int) -> bool:
    """Exhaustive cocone check into every object up to ``bound``."""
    _require_commutes(sq)
    cat = sq.top.cat
    for T in cat.enumerate(bound):
        for a in cat.homs(sq.right.dom, T):
            target = compose(a, sq.top)
            for b in cat.homs(sq.bottom.dom, T):
                if not same(target, compose(b, sq.left)):
                    continue
                count = sum(
                    1
                    for v in cat.homs(sq.corner, T)
                    if same(compose(v, sq.right), a) and same(compose(v, sq.bottom), b)
                )
                if count != 1:
                    return False
    return True
