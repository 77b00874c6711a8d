"""Acceptance criteria, each at its stated scale and time budget.

Every test records one ``PASS``/``FAIL criterion N`` line; the lines are echoed as
they happen and again in the pytest terminal summary.
"""

import random
import sys
import time

import pytest

from adhesivity_lab.adhesivity import (
    check_MN_adhesive,
    check_stable,
    check_van_kampen,
    factor_union,
    kernel_pair_diagram,
    pushout_square,
    replay_cube,
    sample_spans,
)
from adhesivity_lab.categories import DAG, FINSET, GRAPH, SGRAPH, sgraph
from adhesivity_lab.classes import DCL_D, MONO, MOR, REG
from adhesivity_lab.core import Square, compose, identity, is_mono, make_morphism, same
from adhesivity_lab.dpo import NoComplement, Rule, find_matches, pushout_complement, rewrite
from adhesivity_lab.limits import is_pullback, is_pushout, pullback, pushout
from adhesivity_lab.sheaves import (
    build_site,
    is_sheaf_amalgamation,
    is_sheaf_mediator,
    is_sheaf_pullback,
    presheaves,
    random_presheaf,
    representable,
)
from adhesivity_lab.subobjects import equivalent, join_oracle, subobject_poset, union_via_pushout

from conftest import ACCEPTANCE_LINES


def report(n: int, ok: bool, detail: str, started: float) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail} ({time.perf_counter() - started:.1f} s)"
    ACCEPTANCE_LINES.append(line)
    print(line, file=sys.__stdout__, flush=True)


def random_sgraph(rng: random.Random, max_vertices: int = 4, p: float = 0.35):
    nv = rng.randint(1, max_vertices)
    edges = [(s, t) for s in range(nv) for t in range(nv) if rng.random() < p]
    return sgraph(nv, edges)


def random_subobject_pair(rng, n_class=None):
    X = random_sgraph(rng)
    subs = subobject_poset(X)
    m = rng.choice([s for s in subs.elements if REG(s)])
    n = rng.choice([s for s in subs.elements if n_class is None or n_class(s)])
    return subs, m, n


def test_criterion_1_union_matches_join_oracle():
    t0 = time.perf_counter()
    rng = random.Random(0)
    agree = 0
    total = 100
    for _ in range(total):
        subs, m, n = random_subobject_pair(rng)
        d = union_via_pushout(m, n, M=REG, N=MONO)
        j = join_oracle(m, n, subs)
        agree += j is not None and is_mono(d.u) and equivalent(d.u, j)
    elapsed = time.perf_counter() - t0
    ok = agree == total and elapsed < 60
    report(1, ok, f"{agree}/{total} unions equal the join", t0)
    assert ok


def test_criterion_2_mn_pushouts_are_pullbacks():
    t0 = time.perf_counter()
    results = {}
    for name, cat, M in (("SGraph Reg,Mono", SGRAPH, REG), ("DAG Dcl_d,Mono", DAG, DCL_D)):
        spans = set(sample_spans(cat, M, MONO, 100, 3, seed=7))
        good = sum(is_pullback(pushout_square(m, n)) for m, n in spans)
        results[name] = (good, len(spans))
    elapsed = time.perf_counter() - t0
    ok = all(g == t and t >= 100 for g, t in results.values()) and elapsed < 60
    report(2, ok, ", ".join(f"{k}: {g}/{t} distinct" for k, (g, t) in results.items()), t0)
    assert ok


STRUCTURES = [
    ("SGraph", SGRAPH, REG, MONO),
    ("SGraph", SGRAPH, MONO, REG),
    ("DAG", DAG, DCL_D, MONO),
    ("Graph", GRAPH, MONO, MOR),
    ("FinSet", FINSET, MONO, MOR),
]


@pytest.mark.slow
def test_criterion_3_bounded_van_kampen():
    t0 = time.perf_counter()
    parts, ok = [], True
    for tag, cat, M, N in STRUCTURES:
        rep = check_MN_adhesive(cat, M, N, sample_count=25, bound=3, seed=0)
        good = rep.holds and rep.squares_checked >= 25
        ok &= good
        bad = [k for k, v in rep.verdicts.items() if not v.holds]
        parts.append(f"{tag} {M.name},{N.name} {'Holds' if good else 'Fails ' + ','.join(bad)}")
    ok &= time.perf_counter() - t0 < 600
    report(3, ok, "; ".join(parts), t0)
    assert ok


def test_criterion_4_failure_detection():
    t0 = time.perf_counter()
    found = None
    objs = FINSET.enumerate(3)
    for A in objs:
        for B in objs:
            for m in FINSET.homs(A, B):
                if is_mono(m):
                    continue
                for C in objs:
                    for n in FINSET.homs(A, C):
                        sq = pushout_square(m, n)
                        vk = check_van_kampen(sq, 3)
                        if vk.holds:
                            continue
                        faces = replay_cube(vk.witness)
                        if check_stable(sq, 3).holds and not all(faces.values()):
                            found = (sq, vk)
                            break
                    if found:
                        break
                if found:
                    break
            if found:
                break
        if found:
            break
    ok = found is not None and time.perf_counter() - t0 < 300
    detail = f"VK {found[1].status}, stable Holds on {found[0].top.dom.size}-element span" if found else "no witness"
    report(4, ok, detail, t0)
    assert ok


def test_criterion_5_kernel_pair_diagram():
    t0 = time.perf_counter()
    spans = sample_spans(SGRAPH, REG, MONO, 25, 2, seed=5)
    good = sum(kernel_pair_diagram(pushout_square(m, n), 2).holds for m, n in spans)
    ok = good == len(spans) >= 25
    report(5, ok, f"{good}/{len(spans)} diagrams with all six squares pushout, pullback and stable", t0)
    assert ok


def test_criterion_6_union_factorization():
    t0 = time.perf_counter()
    rng = random.Random(6)
    total, good, iso_fail = 25, 0, 0
    for _ in range(total):
        _, m, n = random_subobject_pair(rng, n_class=REG)
        f = factor_union(union_via_pushout(m, n, M=REG, N=MONO), REG, MONO)
        iso_fail += not f.e_u_iso
        good += f.e_u_epi and f.m_u_in_class and f.factorizes and f.e_u_iso
    ok = good == total
    report(6, ok, f"{good}/{total} unions factor with e_u iso ({iso_fail} with e_u not iso)", t0)
    assert ok


def test_criterion_7_sheaf_characterizations_agree():
    t0 = time.perf_counter()
    site = build_site(SGRAPH, [sgraph(0, []), sgraph(1, []), sgraph(2, [])], REG, MONO)
    checks = (is_sheaf_amalgamation, is_sheaf_pullback, is_sheaf_mediator)

    def verdicts(F):
        return tuple(bool(c(F)) for c in checks)

    small = [verdicts(F) for F in presheaves(site, 2)]
    rng = random.Random(7)
    large = [verdicts(random_presheaf(site, rng, max_size=3, min_largest=3)) for _ in range(50)]
    disagree = sum(len(set(v)) > 1 for v in small + large)
    all_fail = sum(v == (False, False, False) for v in small)
    reps = all(all(verdicts(representable(i, site))) for i in range(len(site.objects)))
    elapsed = time.perf_counter() - t0
    ok = disagree == 0 and all_fail > 0 and reps and elapsed < 600
    report(
        7,
        ok,
        f"{len(small)} small + {len(large)} random presheaves, {disagree} disagreements, "
        f"{all_fail} fail all three, representables {'pass' if reps else 'fail'}",
        t0,
    )
    assert ok


def _random_cone(rng, y, c, objs):
    """A random commuting ``(x: X -> U, a: X -> Y)`` over ``y: Y -> V`` and ``c: U -> V``."""
    if rng.random() < 0.5:
        res = pullback(y, c)
        return res.proj2, res.proj1
    X = rng.choice(objs)
    cands = [
        (x, a)
        for x in GRAPH.homs(X, c.dom)
        for a in GRAPH.homs(X, y.dom)
        if same(compose(y, a), compose(c, x))
    ]
    return rng.choice(cands) if cands else (identity(c.dom), None)


def pullback_configuration(rng, objs, small):
    while True:
        W = rng.choice(objs)
        zs = [z for Z in objs for z in GRAPH.homs(Z, W)]
        ds = [d for V in objs for d in GRAPH.homs(V, W)]
        if not zs or not ds:
            continue
        z, d = rng.choice(zs), rng.choice(ds)
        res = pullback(z, d)
        b, y = res.proj1, res.proj2
        cs = [c for U in small for c in GRAPH.homs(U, d.dom)]
        if not cs:
            continue
        c = rng.choice(cs)
        x, a = _random_cone(rng, y, c, small)
        if a is None:
            continue
        left = Square(a, x, y, c)
        right = Square(b, y, z, d)
        return left, right, Square(compose(b, a), x, z, compose(d, c))


def _random_cocone(rng, y, b, objs):
    """A random commuting ``(z: Z -> W, d: V -> W)`` under ``y: Y -> V`` and ``b: Y -> Z``."""
    if rng.random() < 0.5:
        res = pushout(b, y)
        return res.inj1, res.inj2
    W = rng.choice(objs)
    cands = [
        (z, d)
        for z in GRAPH.homs(b.cod, W)
        for d in GRAPH.homs(y.cod, W)
        if same(compose(z, b), compose(d, y))
    ]
    return rng.choice(cands) if cands else (None, None)


def pushout_configuration(rng, objs, small):
    while True:
        X = rng.choice(small)
        xs = [x for U in small for x in GRAPH.homs(X, U)]
        as_ = [a for Y in small for a in GRAPH.homs(X, Y)]
        if not xs or not as_:
            continue
        x, a = rng.choice(xs), rng.choice(as_)
        res = pushout(a, x)
        y, c = res.inj1, res.inj2
        bs = [b for Z in small for b in GRAPH.homs(y.dom, Z)]
        if not bs:
            continue
        b = rng.choice(bs)
        z, d = _random_cocone(rng, y, b, objs)
        if z is None:
            continue
        left = Square(a, x, y, c)
        right = Square(b, y, z, d)
        return left, right, Square(compose(b, a), x, z, compose(d, c))


def test_criterion_8_pasting_lemmas():
    t0 = time.perf_counter()
    rng = random.Random(8)
    objs, small = GRAPH.enumerate(2), GRAPH.enumerate(1)
    pb_ok = po_ok = 0
    pb_cases = {True: 0, False: 0}
    po_cases = {True: 0, False: 0}
    n = 200
    for _ in range(n):
        left, right, rect = pullback_configuration(rng, objs, small)
        assert is_pullback(right)
        lp = is_pullback(left)
        pb_cases[lp] += 1
        pb_ok += lp == is_pullback(rect)
        left, right, rect = pushout_configuration(rng, objs, small)
        assert is_pushout(left)
        rp = is_pushout(right)
        po_cases[rp] += 1
        po_ok += rp == is_pushout(rect)
    ok = pb_ok == n and po_ok == n
    report(
        8,
        ok,
        f"pullback pasting {pb_ok}/{n} ({pb_cases[True]} left pullbacks), "
        f"pushout pasting {po_ok}/{n} ({po_cases[True]} right pushouts)",
        t0,
    )
    assert ok


def _g(nv, edges):
    return GRAPH.make(nv, [s for s, _ in edges], [t for _, t in edges])


def _m(dom, cod, vmap, emap=()):
    return make_morphism(dom, cod, [tuple(vmap), tuple(emap)])


def dpo_rules():
    e0, v1, v2 = _g(0, []), _g(1, []), _g(2, [])
    edge, loop = _g(2, [(0, 1)]), _g(1, [(0, 0)])
    back = _g(2, [(1, 0)])
    path = _g(3, [(0, 1), (1, 2)])
    return [
        Rule(identity(v1), identity(v1), "keep-vertex"),
        Rule(identity(edge), identity(edge), "keep-edge"),
        Rule(_m(v2, edge, (0, 1)), identity(v2), "delete-edge"),
        Rule(_m(e0, v1, ()), identity(e0), "delete-vertex"),
        Rule(identity(e0), _m(e0, v1, ()), "add-vertex"),
        Rule(identity(v2), _m(v2, edge, (0, 1)), "add-edge"),
        Rule(_m(v1, loop, (0,)), identity(v1), "delete-loop"),
        Rule(identity(v1), _m(v1, loop, (0,)), "add-loop"),
        Rule(_m(v2, edge, (0, 1)), _m(v2, back, (0, 1)), "reverse-edge"),
        Rule(identity(v2), _m(v2, v1, (0, 0)), "merge-vertices"),
        Rule(_m(v1, edge, (0,)), identity(v1), "delete-edge-and-target"),
        Rule(_m(v2, path, (0, 2)), _m(v2, edge, (0, 1)), "contract-path"),
    ]


def dpo_hosts():
    return [
        _g(0, []),
        _g(2, []),
        _g(2, [(0, 1)]),
        _g(3, [(0, 1), (1, 2)]),
        _g(1, [(0, 0)]),
        _g(3, [(0, 1), (1, 2), (2, 0)]),
        _g(2, [(0, 1), (0, 1)]),
        _g(4, [(0, 1), (2, 3), (3, 3)]),
    ]


def test_criterion_9_dpo_soundness():
    t0 = time.perf_counter()
    rules, hosts = dpo_rules(), dpo_hosts()
    steps = bad = blocked = 0
    for rule in rules:
        rule.check(MONO)
        for G in hosts:
            for g in find_matches(rule, G, MONO):
                comp = pushout_complement(rule.l, g)
                if not comp:
                    blocked += 1
                    continue
                _, step = rewrite(rule, g)
                steps += 1
                bad += not (is_pushout(step.left) and is_pushout(step.right))
    delete_vertex, delete_edge_and_target = rules[3], rules[10]
    path = hosts[3]
    dangling = [
        pushout_complement(delete_vertex.l, _m(delete_vertex.L, path, (1,))),
        pushout_complement(delete_edge_and_target.l, _m(delete_edge_and_target.L, path, (0, 1), (0,))),
    ]
    dangling_ok = all(isinstance(c, NoComplement) and "dangling" in c.defect for c in dangling)
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and steps > 0 and dangling_ok and elapsed < 60
    report(
        9,
        ok,
        f"{len(rules)} rules x {len(hosts)} hosts: {steps} steps, {bad} bad squares, {blocked} without complement; "
        f"dangling fixtures {'rejected' if dangling_ok else 'accepted'}",
        t0,
    )
    assert ok
