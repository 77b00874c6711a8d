"""Bounded Van Kampen checks, N-adhesive morphisms, kernel-pair strips and union factorization.

Squares to be checked follow the orientation used for pushouts of ``m`` along ``n``::

    X --n--> Z
    |        |
    m        p
    v        v
    Y --q--> W

i.e. ``Square(top=n, left=m, right=p, bottom=q)``. Cubes are :class:`~adhesivity_lab.core.Cube`
values sitting over that square.

Every verdict is bounded: ``HoldsUpTo(b)`` means every cube whose new vertices
have at most ``b`` elements per sort passed, and is not a proof.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .core import (
    AdhesivityError,
    BoundedVerdict,
    Cube,
    Morphism,
    Square,
    compose,
    first_failure,
    identity,
    inverse,
    is_epi,
    is_mono,
    is_split_mono,
    leaves,
    leaf_sizes,
    same,
)
from .limits import (
    factor_through_mono,
    cokernel_pair,
    equalizer,
    is_pullback,
    is_pushout,
    pullback,
    pushout,
)
from .subobjects import HypothesisViolation, UnionDiagram


class NotAPushout(AdhesivityError):
    pass


# -- enumeration helpers ---------------------------------------------------


@lru_cache(maxsize=None)
def automorphisms(A) -> tuple:
    cat = A.category
    return tuple(f for f in cat.homs(A, A, injective=True) if inverse(f) is not None)


def homs_mod_aut(A, B) -> list[Morphism]:
    """``hom(A, B)`` with one representative per orbit of precomposition by ``Aut(A)``."""
    cat = A.category
    autos = [leaves(a) for a in automorphisms(A)]
    out = []
    for f in cat.homs(A, B):
        fl = leaves(f)
        key = fl
        for al in autos:
            k = tuple(tuple(fm[i] for i in am) for fm, am in zip(fl, al))
            if k < key:
                break
        else:
            out.append(f)
    return out


def arrows_into(B, bound: int, cls=None):
    """Arrows ``A → B`` from every object up to ``bound``, reduced modulo ``Aut(A)``."""
    for A in B.category.enumerate(bound):
        for f in homs_mod_aut(A, B):
            if cls is None or cls(f):
                yield f


def fiber_signature(f: Morphism) -> tuple:
    """Fiber sizes over every element of the codomain; invariant under isos over the codomain."""
    out = []
    for fm, n in zip(leaves(f), leaf_sizes(f.cod)):
        c = Counter(fm)
        out.append(tuple(c.get(j, 0) for j in range(n)))
    return tuple(out)


def isos_over(a: Morphism, b: Morphism):
    """Every isomorphism ``φ: dom a → dom b`` with ``b ∘ φ = a``."""
    if fiber_signature(a) != fiber_signature(b):
        return
    allowed = []
    for am, bm in zip(leaves(a), leaves(b)):
        by_image: dict[int, set] = {}
        for j, v in enumerate(bm):
            by_image.setdefault(v, set()).add(j)
        allowed.append(tuple(frozenset(by_image.get(v, ())) for v in am))
    cat = a.cat
    for phi in cat.homs(a.dom, b.dom, allowed=tuple(allowed), injective=True):
        if inverse(phi) is not None:
            yield phi


# -- cubes -------------------------------------------------------------------


def replay_cube(c: Cube) -> dict[str, bool]:
    """Face-by-face status of a cube: which faces are pullbacks / pushouts."""
    return {
        "bottom_pushout": is_pushout(c.bottom()),
        "top_pushout": is_pushout(c.top()),
        "back_pullback": is_pullback(c.back()),
        "left_pullback": is_pullback(c.left()),
        "front_pullback": is_pullback(c.front()),
        "right_pullback": is_pullback(c.right()),
    }


def _squares(sq: Square):
    return sq.top, sq.left, sq.right, sq.bottom


def _require_pushout(sq: Square) -> None:
    if not is_pushout(sq):
        raise NotAPushout("the square is not a pushout")


def _vertical_ok(cls, *arrows) -> bool:
    return cls is None or all(cls(a) for a in arrows)


def stable_cubes(sq: Square, bound: int):
    """Cubes over ``sq`` obtained by pulling back along every ``w: W' → W`` (mod ``Aut W'``)."""
    n, m, p, q = _squares(sq)
    for w in arrows_into(sq.corner, bound):
        front = pullback(q, w)
        right = pullback(p, w)
        y, q_ = front.proj1, front.proj2
        z, p_ = right.proj1, right.proj2
        left = pullback(m, y)
        x, m_ = left.proj1, left.proj2
        n_ = right.mediator(compose(n, x), compose(q_, m_))
        yield Cube(m_, n_, p_, q_, x, y, z, w, m, n, p, q)


def check_stable(sq: Square, bound: int, vertical_class=None) -> BoundedVerdict:
    """The 'if' half of the Van Kampen condition, up to ``bound``."""
    _require_pushout(sq)
    checked = 0
    for c in stable_cubes(sq, bound):
        if not _vertical_ok(vertical_class, c.x, c.y, c.z, c.w):
            continue
        checked += 1
        if not is_pushout(c.top()):
            return BoundedVerdict.fails(
                c, "front, right, back and left faces are pullbacks but the top face is not a pushout", bound, checked
            )
    return BoundedVerdict.holds_up_to(bound, checked)


def only_if_cubes(sq: Square, bound: int):
    """Cubes with pullback back/left faces and a pushout top face, up to ``bound``."""
    n, m, p, q = _squares(sq)
    by_sig: dict[tuple, list] = {}
    for z in arrows_into(n.cod, bound):
        back = pullback(n, z)
        by_sig.setdefault(fiber_signature(back.proj1), []).append((z, back))
    for y in arrows_into(m.cod, bound):
        left = pullback(m, y)
        x, m_ = left.proj1, left.proj2
        for z, back in by_sig.get(fiber_signature(x), ()):
            for phi in isos_over(x, back.proj1):
                n_ = compose(back.proj2, phi)
                try:
                    top = pushout(n_, m_)
                except AdhesivityError:
                    continue  # the top square has no pushout inside the category
                w = top.mediator(compose(p, z), compose(q, y))
                yield Cube(m_, n_, top.inj1, top.inj2, x, y, z, w, m, n, p, q)


def check_only_if(sq: Square, bound: int, vertical_class=None) -> BoundedVerdict:
    _require_pushout(sq)
    checked = 0
    for c in only_if_cubes(sq, bound):
        if not _vertical_ok(vertical_class, c.x, c.y, c.z, c.w):
            continue
        checked += 1
        if not is_pullback(c.front()):
            return BoundedVerdict.fails(c, "top face is a pushout but the front face is not a pullback", bound, checked)
        if not is_pullback(c.right()):
            return BoundedVerdict.fails(c, "top face is a pushout but the right face is not a pullback", bound, checked)
    return BoundedVerdict.holds_up_to(bound, checked)


def check_van_kampen(sq: Square, bound: int, vertical_class=None) -> BoundedVerdict:
    """Both halves of the Van Kampen condition over cubes up to ``bound``.

    ``vertical_class`` restricts to cubes whose vertical arrows lie in a class;
    ``None`` (the default) checks all cubes.
    """
    stable = check_stable(sq, bound, vertical_class)
    if not stable.holds:
        return stable
    rest = check_only_if(sq, bound, vertical_class)
    if not rest.holds:
        return rest
    return BoundedVerdict.holds_up_to(bound, stable.checked + rest.checked)


# -- N-adhesive morphisms ----------------------------------------------------


def pushout_square(m: Morphism, n: Morphism) -> Square:
    """The canonical pushout of ``m`` along ``n`` as ``Square(n, m, p, q)``."""
    res = pushout(n, m)
    return Square(n, m, res.inj1, res.inj2)


def is_N_preadhesive(m: Morphism, N, bound: int, stable_bound: int | None = None) -> BoundedVerdict:
    """Pushouts of ``m`` along every ``n`` in ``N`` (codomain up to ``bound``) exist, are stable and are pullbacks."""
    sb = bound if stable_bound is None else stable_bound
    checked = 0
    cat = m.cat
    for Z in cat.enumerate(bound):
        for n in homs_mod_aut_target(m.dom, Z):
            if not N(n):
                continue
            checked += 1
            try:
                sq = pushout_square(m, n)
            except AdhesivityError as exc:
                return BoundedVerdict.fails((m, n), f"no pushout of m along n: {exc}", bound, checked)
            if not is_pullback(sq):
                return BoundedVerdict.fails(sq, "pushout along n is not a pullback", bound, checked)
            v = check_stable(sq, sb)
            if not v.holds:
                return BoundedVerdict.fails(v.witness, "pushout along n is not stable: " + v.reason, bound, checked)
    return BoundedVerdict.holds_up_to(bound, checked)


def homs_mod_aut_target(A, B) -> list[Morphism]:
    """``hom(A, B)`` reduced modulo postcomposition with ``Aut(B)``."""
    autos = [leaves(a) for a in automorphisms(B)]
    out = []
    for f in A.category.homs(A, B):
        fl = leaves(f)
        for al in autos:
            k = tuple(tuple(am[i] for i in fm) for fm, am in zip(fl, al))
            if k < fl:
                break
        else:
            out.append(f)
    return out


def is_N_adhesive(m: Morphism, N, bound: int, stable_bound: int | None = None) -> BoundedVerdict:
    """Every pullback of ``m`` along arrows from objects up to ``bound`` is N-preadhesive."""
    checked = 0
    for g in arrows_into(m.cod, bound):
        res = pullback(m, g)
        checked += 1
        v = is_N_preadhesive(res.proj2, N, bound, stable_bound)
        if not v.holds:
            return BoundedVerdict.fails(
                {"pullback_along": g, "inner": v.witness}, "a pullback of m is not N-preadhesive: " + v.reason, bound, checked
            )
    return BoundedVerdict.holds_up_to(bound, checked)


# -- kernel pairs -----------------------------------------------------------


@dataclass(frozen=True)
class KernelPairDiagram:
    square: Square
    K_n: object
    K_q: object
    gamma_n: Morphism
    gamma_q: Morphism
    k: Morphism
    x1: Morphism
    x2: Morphism
    y1: Morphism
    y2: Morphism
    verdicts: dict = field(default_factory=dict)

    def squares(self) -> dict[str, Square]:
        n, m, p, q = _squares(self.square)
        left = Square(self.gamma_n, m, self.k, self.gamma_q)
        return {
            "strip1_left": left,
            "strip1_center": Square(self.x1, self.k, m, self.y1),
            "strip1_right": self.square,
            "strip2_left": left,
            "strip2_center": Square(self.x2, self.k, m, self.y2),
            "strip2_right": self.square,
        }

    @property
    def holds(self) -> bool:
        return all(v.holds for vs in self.verdicts.values() for v in vs.values())


def kernel_pair_diagram(sq: Square, bound: int = 2) -> KernelPairDiagram:
    """Build ``K_n``, ``K_q``, ``γ_n``, ``γ_q`` and ``k``, then check each of the six squares.

    The caller asserts the hypotheses (every arrow of M is N-adhesive, split monos
    lie in M∩N, M is closed under unions); they are not re-proved here.
    """
    n, m, p, q = _squares(sq)
    kn = pullback(n, n)
    kq = pullback(q, q)
    gamma_n = kn.mediator(identity(n.dom), identity(n.dom))
    gamma_q = kq.mediator(identity(q.dom), identity(q.dom))
    k = kq.mediator(compose(m, kn.proj1), compose(m, kn.proj2))
    if k is None:
        raise HypothesisViolation("no arrow k: K_n → K_q; the square does not commute", witness=sq)
    d = KernelPairDiagram(sq, kn.apex, kq.apex, gamma_n, gamma_q, k, kn.proj1, kn.proj2, kq.proj1, kq.proj2)
    cache: dict = {}
    for name, s in d.squares().items():
        if s not in cache:
            po = is_pushout(s)
            cache[s] = {
                "pushout": BoundedVerdict.holds_up_to(None) if po else BoundedVerdict.fails(s, "not a pushout"),
                "pullback": BoundedVerdict.holds_up_to(None)
                if is_pullback(s)
                else BoundedVerdict.fails(s, "not a pullback"),
                "stable": check_stable(s, bound) if po else BoundedVerdict.fails(s, "not a pushout, so not stable"),
            }
        d.verdicts[name] = cache[s]
    return d


# -- union factorization ------------------------------------------------------


@dataclass(frozen=True)
class UnionFactorization:
    u: Morphism
    e_u: Morphism
    m_u: Morphism
    E_u: object
    e_u_epi: bool
    e_u_iso: bool
    m_u_in_class: bool
    factorizes: bool


def factor_union(diagram: UnionDiagram | Morphism, M, N) -> UnionFactorization:
    """Factor ``u`` as ``m_u ∘ e_u`` where ``m_u`` equalizes the cokernel pair of ``u``."""
    u = diagram.u if isinstance(diagram, UnionDiagram) else diagram
    sq, _ = cokernel_pair(u)
    E, m_u = equalizer(sq.right, sq.bottom)
    e_u = factor_through_mono(u, m_u)
    if e_u is None:
        raise HypothesisViolation("u does not factor through the equalizer of its cokernel pair", witness=u)
    epi = is_epi(e_u)
    if not epi:
        raise HypothesisViolation("e_u is not an epimorphism", witness=e_u)
    return UnionFactorization(
        u=u,
        e_u=e_u,
        m_u=m_u,
        E_u=E,
        e_u_epi=epi,
        e_u_iso=inverse(e_u) is not None,
        m_u_in_class=bool(M(m_u) and N(m_u)),
        factorizes=same(compose(m_u, e_u), u),
    )


# -- whole-category sampling ---------------------------------------------------


def class_arrows(cat, cls, bound: int) -> list[Morphism]:
    objs = cat.enumerate(bound)
    return [f for A in objs for B in objs for f in cat.homs(A, B) if cls(f)]


def sample_spans(cat, M, N, count: int, bound: int, seed: int) -> list[tuple[Morphism, Morphism]]:
    """Seeded sample of spans ``(m, n)`` with ``m ∈ M``, ``n ∈ N`` and objects up to ``bound``.

    Distinct spans are drawn without replacement while they last.
    """
    ms = class_arrows(cat, M, bound)
    ns: dict = {}
    for f in class_arrows(cat, N, bound):
        ns.setdefault(f.dom, []).append(f)
    pool = [(m, n) for m in ms for n in ns.get(m.dom, ())]
    if not pool:
        return []
    rng = random.Random(seed)
    if len(pool) >= count:
        return rng.sample(pool, count)
    return pool + [rng.choice(pool) for _ in range(count - len(pool))]


@dataclass
class AdhesivityReport:
    category: object
    M: object
    N: object
    bound: int
    samples: int
    seed: int
    verdicts: dict = field(default_factory=dict)
    squares_checked: int = 0

    @property
    def holds(self) -> bool:
        return all(v.holds for v in self.verdicts.values())


def check_MN_adhesive(
    cat, M, N, sample_count: int = 100, bound: int = 3, seed: int = 0, span_bound: int = 2
) -> AdhesivityReport:
    """Sample M,N-spans and check pullback/pushout existence, the pullback property and VK."""
    report = AdhesivityReport(cat, M, N, bound, sample_count, seed)
    spans = sample_spans(cat, M, N, sample_count, span_bound, seed)
    rng = random.Random(seed + 1)
    pulls, pushes, pb_props, vks = [], [], [], []
    seen: dict = {}
    for m, n in spans:
        gs = list(arrows_into(m.cod, span_bound))
        g = rng.choice(gs)
        res = pullback(m, g)
        pulls.append(
            BoundedVerdict.holds_up_to(span_bound)
            if is_pullback(Square(res.proj1, res.proj2, m, g))
            else BoundedVerdict.fails((m, g), "computed M-pullback fails its own check")
        )
        try:
            sq = pushout_square(m, n)
        except AdhesivityError as exc:
            pushes.append(BoundedVerdict.fails((m, n), f"M,N-pushout does not exist: {exc}"))
            continue
        pushes.append(BoundedVerdict.holds_up_to(span_bound))
        pb_props.append(
            BoundedVerdict.holds_up_to(span_bound)
            if is_pullback(sq)
            else BoundedVerdict.fails(sq, "M,N-pushout is not a pullback")
        )
        if sq not in seen:
            seen[sq] = check_van_kampen(sq, bound)
        vks.append(seen[sq])
    report.squares_checked = len(vks)
    report.verdicts["m_pullbacks"] = first_failure(pulls, span_bound)
    report.verdicts["mn_pushouts"] = first_failure(pushes, span_bound)
    report.verdicts["pushouts_are_pullbacks"] = first_failure(pb_props, span_bound)
    report.verdicts["van_kampen"] = first_failure(vks, bound)
    return report


def split_mono_pushout_stable(sq: Square) -> bool:
    """If the left leg of a pushout square is a split mono, so is the opposite leg."""
    if not is_split_mono(sq.left):
        return True
    return is_split_mono(sq.right)


def right_leg_mono(sq: Square) -> bool:
    """For a pushout of ``m`` along ``n``: ``m`` mono implies ``p`` mono."""
    return not is_mono(sq.left) or is_mono(sq.right)
