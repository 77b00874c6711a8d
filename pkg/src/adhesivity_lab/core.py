"""Morphisms, commuting diagrams and the per-category plumbing shared by every module.

Objects are immutable dataclasses defined alongside their category (see
:mod:`adhesivity_lab.categories`). Every object exposes a ``category`` property;
a :class:`Morphism` finds its category through its domain.

Morphisms store one integer tuple per *sort* of a flat presentation (vertices,
edges, ...). Composite categories (products, comma categories) store
sub-morphisms instead, and :func:`leaves` flattens them back to plain tuples
whenever a uniform, elementwise view is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence


class AdhesivityError(Exception):
    """Base class for every error raised by this package."""


class CompositionError(AdhesivityError):
    pass


class CategoryMismatch(AdhesivityError):
    pass


class InvalidMorphism(AdhesivityError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ApexOutsideCategory(AdhesivityError):
    """A colimit computed in the ambient presentation left the subcategory."""

    def __init__(self, message: str, witness: Any = None):
        self.witness = witness
        super().__init__(message)


class NoSuchObject(AdhesivityError):
    """The requested universal object does not exist in this category."""


class BoundTooLarge(AdhesivityError):
    pass


class NotClosed(AdhesivityError):
    """A requested substructure is not closed (e.g. a kept edge lost an endpoint)."""

    def __init__(self, message: str, witness: Any = None):
        self.witness = witness
        super().__init__(message)


@dataclass(frozen=True)
class Morphism:
    dom: Any
    cod: Any
    maps: tuple

    @property
    def cat(self):
        return self.dom.category

    def __call__(self, x: int, sort: int = 0) -> int:
        return self.maps[sort][x]

    def __repr__(self) -> str:
        return f"Morphism({self.dom!r} -> {self.cod!r}, {self.maps!r})"


def _compose_maps(fm: tuple, gm: tuple) -> tuple:
    out = []
    for a, b in zip(fm, gm):
        if isinstance(a, Morphism):
            out.append(compose(a, b))
        else:
            out.append(tuple(a[i] for i in b))
    return tuple(out)


def compose(f: Morphism, *rest: Morphism) -> Morphism:
    """Return ``f ∘ g ∘ ...`` (rightmost applied first)."""
    for g in rest:
        if g.cod is not f.dom and g.cod != f.dom:
            raise CompositionError(f"cannot compose: cod(g)={g.cod!r} but dom(f)={f.dom!r}")
        f = Morphism(g.dom, f.cod, _compose_maps(f.maps, g.maps))
    return f


def identity(obj) -> Morphism:
    return Morphism(obj, obj, obj.category.identity_maps(obj))


def leaves(f: Morphism) -> tuple:
    return f.cat.flatten(f.maps)


def leaf_sizes(obj) -> tuple:
    return obj.category.leaf_sizes(obj)


def violations(f: Morphism) -> list[str]:
    cat = f.cat
    if f.cod.category != cat:
        return [f"domain category {cat} differs from codomain category {f.cod.category}"]
    return cat.check_maps(f.dom, f.cod, f.maps)


def is_valid(f: Morphism) -> bool:
    return not violations(f)


def make_morphism(dom, cod, maps, check: bool = True) -> Morphism:
    f = Morphism(dom, cod, tuple(tuple(m) if not isinstance(m, Morphism) else m for m in maps))
    if check:
        bad = violations(f)
        if bad:
            raise InvalidMorphism(bad)
    return f


def from_leaves(dom, cod, leaf_maps, check: bool = True) -> Morphism | None:
    """Rebuild a morphism from flat leaf tuples; ``None`` if not structure preserving."""
    maps = dom.category.unflatten(dom, cod, tuple(tuple(m) for m in leaf_maps))
    f = Morphism(dom, cod, maps)
    if check and violations(f):
        return None
    return f


class Classification(NamedTuple):
    is_mono: bool
    is_epi: bool
    is_iso: bool
    is_split_mono: bool


def is_mono(f: Morphism) -> bool:
    return all(len(set(m)) == len(m) for m in leaves(f))


def is_epi(f: Morphism) -> bool:
    return all(len(set(m)) == n for m, n in zip(leaves(f), leaf_sizes(f.cod)))


def inverse(f: Morphism) -> Morphism | None:
    """The two-sided inverse of ``f`` or ``None`` when ``f`` is not an iso."""
    inv = []
    for m, n in zip(leaves(f), leaf_sizes(f.cod)):
        if len(m) != n or len(set(m)) != n:
            return None
        row = [0] * n
        for i, j in enumerate(m):
            row[j] = i
        inv.append(row)
    return from_leaves(f.cod, f.dom, inv)


def is_iso(f: Morphism) -> bool:
    return inverse(f) is not None


def retractions(f: Morphism):
    """Every ``r`` with ``r ∘ f = id``, found by exhaustive search over hom(cod f, dom f)."""
    if not is_mono(f):
        return
    allowed = []
    for m, n_cod, n_dom in zip(leaves(f), leaf_sizes(f.cod), leaf_sizes(f.dom)):
        row = [None] * n_cod
        for i, j in enumerate(m):
            row[j] = frozenset((i,))
        allowed.append(tuple(row))
    yield from f.cat.homs(f.cod, f.dom, allowed=tuple(allowed))


def is_split_mono(f: Morphism) -> bool:
    return next(retractions(f), None) is not None


def classify(f: Morphism) -> Classification:
    bad = violations(f)
    if bad:
        raise InvalidMorphism(bad)
    mono, epi = is_mono(f), is_epi(f)
    iso = mono and epi and is_iso(f)
    return Classification(mono, epi, iso, iso or is_split_mono(f))


def same(f: Morphism, g: Morphism) -> bool:
    return f.dom == g.dom and f.cod == g.cod and leaves(f) == leaves(g)


@dataclass(frozen=True)
class Span:
    left: Morphism
    right: Morphism


@dataclass(frozen=True)
class Square:
    """A square ``A -top-> B``, ``A -left-> C``, ``B -right-> D``, ``C -bottom-> D``.

    It commutes when ``right ∘ top = bottom ∘ left``.
    """

    top: Morphism
    left: Morphism
    right: Morphism
    bottom: Morphism

    @property
    def apex(self):
        return self.top.dom

    @property
    def corner(self):
        return self.right.cod

    def endpoints_match(self) -> bool:
        return (
            self.top.dom == self.left.dom
            and self.top.cod == self.right.dom
            and self.left.cod == self.bottom.dom
            and self.right.cod == self.bottom.cod
        )

    def transpose(self) -> "Square":
        return Square(self.left, self.top, self.bottom, self.right)


def commutes(sq: Square) -> bool:
    if not sq.endpoints_match():
        raise CompositionError("square endpoints do not match")
    return leaves(compose(sq.right, sq.top)) == leaves(compose(sq.bottom, sq.left))


@dataclass(frozen=True)
class Cube:
    """A cube over a bottom square, with arrow names following the usual VK picture.

    Bottom: ``X -n-> Z``, ``X -m-> Y``, ``Z -p-> W``, ``Y -q-> W``; the top face
    carries the primed arrows and ``x, y, z, w`` are the vertical arrows.
    """

    m_: Morphism
    n_: Morphism
    p_: Morphism
    q_: Morphism
    x: Morphism
    y: Morphism
    z: Morphism
    w: Morphism
    m: Morphism
    n: Morphism
    p: Morphism
    q: Morphism

    def top(self) -> Square:
        return Square(self.n_, self.m_, self.p_, self.q_)

    def bottom(self) -> Square:
        return Square(self.n, self.m, self.p, self.q)

    def back(self) -> Square:
        return Square(self.n_, self.x, self.z, self.n)

    def left(self) -> Square:
        return Square(self.m_, self.x, self.y, self.m)

    def front(self) -> Square:
        return Square(self.q_, self.y, self.w, self.q)

    def right(self) -> Square:
        return Square(self.p_, self.z, self.w, self.p)

    def faces(self) -> dict[str, Square]:
        return {
            "top": self.top(),
            "bottom": self.bottom(),
            "back": self.back(),
            "left": self.left(),
            "front": self.front(),
            "right": self.right(),
        }


def cube_commutes(c: Cube) -> bool:
    return all(commutes(face) for face in c.faces().values())


@dataclass(frozen=True)
class BoundedVerdict:
    """Outcome of a bounded check.

    ``holds`` verdicts record the bound that was exhausted and are not proofs.
    ``fails`` verdicts carry a concrete witness that the checker can replay.
    """

    holds: bool
    bound: int | None = None
    witness: Any = None
    reason: str = ""
    checked: int = 0

    @classmethod
    def holds_up_to(cls, bound: int | None, checked: int = 0) -> "BoundedVerdict":
        return cls(True, bound, None, "", checked)

    @classmethod
    def fails(cls, witness: Any, reason: str, bound: int | None = None, checked: int = 0) -> "BoundedVerdict":
        return cls(False, bound, witness, reason, checked)

    @property
    def status(self) -> str:
        return f"HoldsUpTo({self.bound})" if self.holds else "Fails"

    def __bool__(self) -> bool:
        return self.holds


def first_failure(verdicts, bound: int | None) -> BoundedVerdict:
    """Combine verdicts: the first failure wins, otherwise the checks are summed."""
    checked = 0
    for v in verdicts:
        if not v.holds:
            return v
        checked += max(v.checked, 1)
    return BoundedVerdict.holds_up_to(bound, checked)
