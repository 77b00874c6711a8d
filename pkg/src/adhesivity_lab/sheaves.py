"""Finite sites for the M,N-pushout coverage, presheaves on them, and three sheaf checkers.

Everything is relative to the finite site: compatibility of families only
quantifies over arrows between site objects.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .core import AdhesivityError, Morphism, Square, compose, identity, inverse
from .limits import pullback, pushout

SITE_CEILING = 12


class SiteError(AdhesivityError):
    pass


class NotFunctorial(AdhesivityError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


@dataclass(frozen=True)
class CoveringFamily:
    """``{p, q}`` covering ``target``, with the M,N-pushout ``Square(n, m, p, q)`` that exhibits it."""

    target: int
    p: int
    q: int
    witness: Square
    n: int
    m: int
    kernel: int = -1
    y1: int = -1
    y2: int = -1

    @property
    def legs(self) -> tuple[int, int]:
        return self.p, self.q


@dataclass
class FiniteSite:
    category: object
    objects: list
    arrows: list
    hom: dict
    index: dict
    composite: dict
    covers: dict
    M: object = None
    N: object = None
    added: list = field(default_factory=list)
    coverage_failures: list = field(default_factory=list)

    def arrow_id(self, f: Morphism) -> int:
        try:
            return self.index[f]
        except KeyError:
            raise SiteError(f"{f!r} is not an arrow of the site") from None

    def __post_init__(self):
        self._ends = [(self.object_id(f.dom), self.object_id(f.cod)) for f in self.arrows]

    def dom(self, a: int) -> int:
        return self._ends[a][0]

    def cod(self, a: int) -> int:
        return self._ends[a][1]

    def object_id(self, X) -> int:
        for i, Y in enumerate(self.objects):
            if Y == X:
                return i
        raise SiteError(f"{X!r} is not an object of the site")

    def identity_id(self, i: int) -> int:
        return self.index[identity(self.objects[i])]

    def all_covers(self):
        for i in range(len(self.objects)):
            yield from self.covers[i]

    @property
    def coverage_holds(self) -> bool:
        return not self.coverage_failures


def _iso_into(A, objects) -> tuple[int, Morphism] | None:
    cat = A.category
    for i, X in enumerate(objects):
        if cat.leaf_sizes(A) != cat.leaf_sizes(X):
            continue
        for f in cat.homs(A, X, injective=True):
            if inverse(f) is not None:
                return i, f
    return None


def _isos(A, B):
    for f in A.category.homs(A, B, injective=True):
        if inverse(f) is not None:
            yield f


def _arrows(cat, objects):
    arrows, hom, index = [], {}, {}
    for i, A in enumerate(objects):
        for j, B in enumerate(objects):
            ids = []
            for f in cat.homs(A, B):
                index[f] = len(arrows)
                ids.append(len(arrows))
                arrows.append(f)
            hom[(i, j)] = ids
    composite = {}
    n = len(objects)
    for i, j, k in itertools.product(range(n), repeat=3):
        for f in hom[(i, j)]:
            for g in hom[(j, k)]:
                composite[(f, g)] = index[compose(arrows[g], arrows[f])]
    return arrows, hom, index, composite


def _dedupe(objects):
    out = []
    for X in objects:
        if _iso_into(X, out) is None:
            out.append(X)
    return out


def _covers(objects, arrows, hom, index, M, N):
    covers = {i: [] for i in range(len(objects))}
    seen = set()
    needs = []
    n_obj = len(objects)
    for a, y, z in itertools.product(range(n_obj), repeat=3):
        for mi in hom[(a, y)]:
            m = arrows[mi]
            if not M(m):
                continue
            for ni in hom[(a, z)]:
                n = arrows[ni]
                if not N(n):
                    continue
                try:
                    po = pushout(n, m)
                except AdhesivityError:
                    continue
                hit = _iso_into(po.apex, objects)
                if hit is None:
                    continue
                x = hit[0]
                for phi in _isos(po.apex, objects[x]):
                    p, q = compose(phi, po.inj1), compose(phi, po.inj2)
                    key = (index[p], index[q], mi, ni)
                    if key in seen:
                        continue
                    seen.add(key)
                    covers[x].append(CoveringFamily(x, index[p], index[q], Square(n, m, p, q), ni, mi))
                    needs.append(q)
    return covers, needs


def build_site(cat, objects, M, N, extend: bool = True, ceiling: int = SITE_CEILING) -> FiniteSite:
    """All M,N-pushout covers among ``objects`` (up to iso).

    With ``extend`` the kernel pairs ``K_q`` that the mediator checker needs are
    added as extra objects; they take part in compatibility but do not generate
    covers of their own, so the closure stops after one round.
    """
    if isinstance(cat, str):
        from .categories import parse_category

        cat = parse_category(cat)
    if not objects:
        raise SiteError("a site needs at least one object")
    base = _dedupe(list(objects))
    arrows, hom, index, composite = _arrows(cat, base)
    covers, needs = _covers(base, arrows, hom, index, M, N)
    added: list = []
    if extend:
        for q in needs:
            K = pullback(q, q).apex
            if _iso_into(K, base + added) is None:
                added.append(K)
        if len(base) + len(added) > ceiling:
            raise SiteError(f"closing the site under kernel pairs exceeds {ceiling} objects")
    objects = base + added
    if added:
        arrows, hom, index, composite = _arrows(cat, objects)
    site = FiniteSite(cat, objects, arrows, hom, index, composite, {}, M, N, added)
    for x in range(len(objects)):
        site.covers[x] = [_attach_kernel(site, _reindex(site, c)) for c in covers.get(x, ())]
    site.coverage_failures = _coverage_failures(site)
    return site


def _reindex(site: FiniteSite, c: CoveringFamily) -> CoveringFamily:
    w = c.witness
    ids = [site.index[f] for f in (w.right, w.bottom, w.top, w.left)]
    return CoveringFamily(c.target, *ids[:2], w, *ids[2:])


def _attach_kernel(site: FiniteSite, c: CoveringFamily) -> CoveringFamily:
    pb = pullback(site.arrows[c.q], site.arrows[c.q])
    hit = _iso_into(pb.apex, site.objects)
    if hit is None:
        return c
    k, phi = hit
    back = inverse(phi)
    y1 = site.index[compose(pb.proj1, back)]
    y2 = site.index[compose(pb.proj2, back)]
    return CoveringFamily(c.target, c.p, c.q, c.witness, c.n, c.m, k, y1, y2)


def _factors(site: FiniteSite, f: int, through: int) -> bool:
    """Some site arrow ``h`` has ``through ∘ h = f``."""
    a, b = site.dom(f), site.dom(through)
    return any(site.composite[(h, through)] == f for h in site.hom[(a, b)])


def _coverage_failures(site: FiniteSite) -> list:
    """Cover/arrow pairs without a refining cover of the arrow's domain inside the site."""
    bad = []
    for x, cs in site.covers.items():
        for c in cs:
            for w in range(len(site.objects)):
                for g in site.hom[(w, x)]:
                    ok = any(
                        all(
                            any(_factors(site, site.composite[(leg, g)], f) for f in c.legs)
                            for leg in d.legs
                        )
                        for d in site.covers[w]
                    )
                    if not ok:
                        bad.append((c, g))
    return bad


@dataclass(frozen=True)
class FinitePresheaf:
    """``sizes[i]`` is ``|F(X_i)|``; ``action[a]`` is ``F(a)`` as a tuple indexed by ``F(cod a)``."""

    site: FiniteSite = field(repr=False, compare=False, hash=False)
    sizes: tuple
    action: tuple

    def __call__(self, a: int) -> tuple:
        return self.action[a]

    def check(self) -> None:
        functoriality_check(self)


def functoriality_check(F: FinitePresheaf) -> None:
    site = F.site
    if len(F.sizes) != len(site.objects) or len(F.action) != len(site.arrows):
        raise NotFunctorial("presheaf shape does not match the site")
    for a in range(len(site.arrows)):
        row, n_dom, n_cod = F.action[a], F.sizes[site.dom(a)], F.sizes[site.cod(a)]
        if len(row) != n_cod or any(not 0 <= v < n_dom for v in row):
            raise NotFunctorial(f"F of arrow {a} is not a function F(cod) -> F(dom)", witness=a)
    for i in range(len(site.objects)):
        if F.action[site.identity_id(i)] != tuple(range(F.sizes[i])):
            raise NotFunctorial(f"F does not preserve the identity of object {i}", witness=i)
    for (f, g), gf in site.composite.items():
        Ff, Fg = F.action[f], F.action[g]
        if F.action[gf] != tuple(Ff[v] for v in Fg):
            raise NotFunctorial(f"F(g∘f) differs from F(f)∘F(g) for arrows {f}, {g}", witness=(f, g))


@dataclass(frozen=True)
class SheafResult:
    holds: bool
    cover: CoveringFamily | None = None
    family: tuple | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.holds


def _compatibility(site: FiniteSite, c: CoveringFamily) -> list:
    """``(i, g, j, h)`` with ``leg_i ∘ g = leg_j ∘ h`` for every site object ``U``."""
    legs = c.legs
    out = []
    for (i, fi), (j, fj) in itertools.product(enumerate(legs), repeat=2):
        di, dj = site.dom(fi), site.dom(fj)
        for u in range(len(site.objects)):
            for g in site.hom[(u, di)]:
                for h in site.hom[(u, dj)]:
                    if site.composite[(g, fi)] == site.composite[(h, fj)]:
                        out.append((i, g, j, h))
    return out


def is_sheaf_amalgamation(F: FinitePresheaf) -> SheafResult:
    """Every compatible family over every cover has exactly one amalgamation."""
    F.check()
    site = F.site
    for c in site.all_covers():
        cons = _compatibility(site, c)
        legs = c.legs
        ranges = [range(F.sizes[site.dom(f)]) for f in legs]
        restrictions = [F.action[f] for f in legs]
        for family in itertools.product(*ranges):
            if any(F.action[g][family[i]] != F.action[h][family[j]] for i, g, j, h in cons):
                continue
            count = sum(
                1
                for x in range(F.sizes[c.target])
                if all(r[x] == a for r, a in zip(restrictions, family))
            )
            if count != 1:
                why = "no amalgamation" if count == 0 else f"{count} amalgamations"
                return SheafResult(False, c, family, why)
    return SheafResult(True)


def _image_pairs(F: FinitePresheaf, c: CoveringFamily):
    Fp, Fq, Fn, Fm = F.action[c.p], F.action[c.q], F.action[c.n], F.action[c.m]
    return Fp, Fq, Fn, Fm


def _pullback_defect(F: FinitePresheaf, c: CoveringFamily):
    Fp, Fq, Fn, Fm = _image_pairs(F, c)
    site = F.site
    y, z = site.dom(c.q), site.dom(c.p)
    corner = {(s1, s2) for s1 in range(F.sizes[y]) for s2 in range(F.sizes[z]) if Fm[s1] == Fn[s2]}
    image = [(Fq[x], Fp[x]) for x in range(F.sizes[c.target])]
    if len(set(image)) != len(image):
        return None, "comparison map into the pullback is not injective"
    missing = corner - set(image)
    if missing:
        return min(missing), "comparison map into the pullback is not surjective"
    return None


def image_is_pullback(F: FinitePresheaf, c: CoveringFamily) -> bool:
    return _pullback_defect(F, c) is None


def is_sheaf_pullback(F: FinitePresheaf) -> SheafResult:
    """The image of every witness pushout is a pullback of finite sets."""
    F.check()
    for c in F.site.all_covers():
        defect = _pullback_defect(F, c)
        if defect is not None:
            return SheafResult(False, c, *defect)
    return SheafResult(True)


def is_sheaf_mediator(F: FinitePresheaf) -> SheafResult:
    """Elementwise mediator condition: each pair ``(s1, s2)`` agreeing over ``F(N)`` and
    equalized by ``F(y1), F(y2)`` comes from exactly one element of ``F(X)``."""
    F.check()
    site = F.site
    for c in site.all_covers():
        if c.kernel < 0:
            raise SiteError("the kernel pair of a cover lies outside the site")
        Fp, Fq, Fn, Fm = _image_pairs(F, c)
        Fy1, Fy2 = F.action[c.y1], F.action[c.y2]
        y, z = site.dom(c.q), site.dom(c.p)
        for s1 in range(F.sizes[y]):
            if Fy1[s1] != Fy2[s1]:
                continue
            for s2 in range(F.sizes[z]):
                if Fm[s1] != Fn[s2]:
                    continue
                count = sum(1 for x in range(F.sizes[c.target]) if Fq[x] == s1 and Fp[x] == s2)
                if count != 1:
                    why = "no mediator" if count == 0 else f"{count} mediators"
                    return SheafResult(False, c, (s1, s2), why)
    return SheafResult(True)


def representable(X, site: FiniteSite) -> FinitePresheaf:
    """``hom(-, X)`` restricted to the site, acting by precomposition."""
    x = X if isinstance(X, int) else site.object_id(X)
    if not 0 <= x < len(site.objects):
        raise SiteError(f"object {X!r} is outside the site")
    values = {i: site.hom[(i, x)] for i in range(len(site.objects))}
    pos = {i: {a: k for k, a in enumerate(v)} for i, v in values.items()}
    action = []
    for a in range(len(site.arrows)):
        d, c = site.dom(a), site.cod(a)
        action.append(tuple(pos[d][site.composite[(a, h)]] for h in values[c]))
    F = FinitePresheaf(site, tuple(len(values[i]) for i in range(len(site.objects))), tuple(action))
    F.check()
    return F


def constant(site: FiniteSite, size: int) -> FinitePresheaf:
    sizes = tuple(size for _ in site.objects)
    return FinitePresheaf(site, sizes, tuple(tuple(range(size)) for _ in site.arrows))


def _constraints(site: FiniteSite, order: list[int]):
    """Group the functoriality equations by the last arrow in ``order`` they mention."""
    pos = {a: k for k, a in enumerate(order)}
    by_step: dict = {}
    for (f, g), gf in site.composite.items():
        if f not in pos or g not in pos or gf not in pos:
            continue
        step = max(pos[f], pos[g], pos[gf])
        by_step.setdefault(step, []).append((f, g, gf))
    return by_step


def _search_actions(site: FiniteSite, sizes: tuple, rng: random.Random | None = None):
    """Every functorial action with the given value sizes (random order when ``rng`` is set)."""
    ids = {site.identity_id(i) for i in range(len(site.objects))}
    order = [a for a in range(len(site.arrows)) if a not in ids]
    by_step = _constraints(site, list(ids) + order)
    action: list = [None] * len(site.arrows)
    for i in range(len(site.objects)):
        action[site.identity_id(i)] = tuple(range(sizes[i]))
    offset = len(ids)
    for step in range(offset):
        for f, g, gf in by_step.get(step, ()):
            if action[gf] != tuple(action[f][v] for v in action[g]):
                return

    def rec(k):
        if k == len(order):
            yield tuple(action)
            return
        a = order[k]
        choices = list(itertools.product(range(sizes[site.dom(a)]), repeat=sizes[site.cod(a)]))
        if rng is not None:
            rng.shuffle(choices)
        for row in choices:
            action[a] = row
            if all(
                action[gf] == tuple(action[f][v] for v in action[g]) for f, g, gf in by_step.get(k + offset, ())
            ):
                yield from rec(k + 1)
        action[a] = None

    yield from rec(0)


def presheaves(site: FiniteSite, max_size: int):
    """Every presheaf whose value sets have at most ``max_size`` elements."""
    for sizes in itertools.product(range(max_size + 1), repeat=len(site.objects)):
        for action in _search_actions(site, sizes):
            yield FinitePresheaf(site, sizes, action)


def random_presheaf(site: FiniteSite, rng: random.Random, max_size: int = 3, min_largest: int = 0) -> FinitePresheaf:
    """A random functorial presheaf; value sizes are drawn first, then a random action."""
    for _ in range(10_000):
        sizes = tuple(rng.randint(0, max_size) for _ in site.objects)
        if max(sizes) < min_largest:
            continue
        action = next(_search_actions(site, sizes, rng), None)
        if action is not None:
            return FinitePresheaf(site, sizes, action)
    raise SiteError("no functorial presheaf found with the requested sizes")


def natural_transformations(F: FinitePresheaf, G: FinitePresheaf):
    """Every family ``alpha_i: F(i) -> G(i)`` with ``G(a) ∘ alpha_cod = alpha_dom ∘ F(a)``."""
    site = F.site
    n = len(site.objects)
    alpha: list = [None] * n

    def ok(upto: int) -> bool:
        for a in range(len(site.arrows)):
            d, c = site.dom(a), site.cod(a)
            if d > upto or c > upto:
                continue
            Fa, Ga = F.action[a], G.action[a]
            if any(Ga[alpha[c][v]] != alpha[d][Fa[v]] for v in range(F.sizes[c])):
                return False
        return True

    def rec(i):
        if i == n:
            yield tuple(alpha)
            return
        for row in itertools.product(range(G.sizes[i]), repeat=F.sizes[i]):
            alpha[i] = row
            if ok(i):
                yield from rec(i + 1)
        alpha[i] = None

    yield from rec(0)


def yoneda_bijection(site: FiniteSite, a: int, b: int) -> bool:
    """Natural transformations ``y(A) -> y(B)`` correspond one-to-one with ``hom(A, B)``."""
    FA, FB = representable(a, site), representable(b, site)
    idA = site.hom[(a, a)].index(site.identity_id(a))
    images = []
    for alpha in natural_transformations(FA, FB):
        images.append(site.hom[(a, b)][alpha[a][idA]])
    return sorted(images) == sorted(site.hom[(a, b)])
