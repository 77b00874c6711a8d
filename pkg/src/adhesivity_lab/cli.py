"""Command-line interface.  Every subcommand prints one JSON report with sorted keys.

Exit codes: 0 when everything holds, 1 when a verdict fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import __version__
from .adhesivity import check_MN_adhesive, check_van_kampen, replay_cube
from .categories import parse_category
from .classes import parse_class, validate_preadhesive
from .core import AdhesivityError, BoundedVerdict, Cube, Morphism, Square
from .dpo import Rule, RuleError, all_complements, find_matches, pushout_complement, rewrite
from .io import Decoder, Encoder, FormatError, dumps, envelope, load, object_to_json, square_from_json
from .limits import pullback, pushout
from .sheaves import (
    FinitePresheaf,
    NotFunctorial,
    build_site,
    constant,
    is_sheaf_amalgamation,
    is_sheaf_mediator,
    is_sheaf_pullback,
    representable,
)
from .subobjects import HypothesisViolation, check_union, union_via_pushout

MAX_BOUND_VAR = "ADHESIVITY_LAB_MAX_BOUND"


class UsageError(Exception):
    pass


def max_bound() -> int:
    raw = os.environ.get(MAX_BOUND_VAR, "4")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{MAX_BOUND_VAR} must be an integer, got {raw!r}") from None


def _bound(args) -> int:
    cap = max_bound()
    if args.bound < 0:
        raise UsageError("--bound must be non-negative")
    if args.bound > cap:
        raise UsageError(f"--bound {args.bound} exceeds the ceiling {cap} (set {MAX_BOUND_VAR} to raise it)")
    return args.bound


def _classes(args, cat, default: str):
    tokens = (args.cls or default).split(",")
    if len(tokens) != 2:
        raise UsageError("--class takes two comma-separated class tokens, e.g. reg,mono")
    return parse_class(tokens[0], cat), parse_class(tokens[1], cat)


def _category(tag: str):
    try:
        return parse_category(tag)
    except AdhesivityError as exc:
        raise UsageError(str(exc)) from None


def _witness(enc: Encoder, w):
    if w is None:
        return None
    if isinstance(w, Morphism):
        return enc.morphism(w)
    if isinstance(w, Square):
        return enc.square(w)
    if isinstance(w, Cube):
        faces = {name: enc.square(sq) for name, sq in w.faces().items()}
        return {"faces": faces, "replay": replay_cube(w)}
    if isinstance(w, (tuple, list)) and all(isinstance(x, Morphism) for x in w):
        return [enc.morphism(x) for x in w]
    return repr(w)


def _verdict(enc: Encoder, v: BoundedVerdict) -> dict:
    return {
        "status": v.status,
        "holds": v.holds,
        "bound": v.bound,
        "checked": v.checked,
        "reason": v.reason,
        "witness": _witness(enc, v.witness),
    }


def _payload_morphism(dec: Decoder, payload: dict, key: str = "morphism"):
    data = payload.get(key, payload)
    return dec.morphism(data, f"payload.{key}" if key in payload else "payload")


def _two_arrows(path: str):
    cat, payload = load(path)
    dec = Decoder(cat, payload.get("objects"))
    f = dec.morphism(payload.get("left"), "payload.left")
    g = dec.morphism(payload.get("right"), "payload.right")
    return cat, f, g


def cmd_pullback(args):
    cat, f, g = _two_arrows(args.file)
    if f.cod != g.cod:
        raise FormatError("the two arrows need a common codomain", "payload")
    res = pullback(f, g)
    enc = Encoder()
    out = {"apex": enc.obj(res.apex), "proj1": enc.morphism(res.proj1), "proj2": enc.morphism(res.proj2)}
    return 0, envelope(cat, {**out, "objects": enc.objects})


def cmd_pushout(args):
    cat, f, g = _two_arrows(args.file)
    if f.dom != g.dom:
        raise FormatError("the two arrows need a common domain", "payload")
    enc = Encoder()
    try:
        res = pushout(f, g)
    except AdhesivityError as exc:
        witness = getattr(exc, "witness", None)
        body = {"exists": False, "reason": str(exc), "witness": witness if isinstance(witness, (dict, list)) else repr(witness)}
        return 1, envelope(cat, body)
    out = {"exists": True, "apex": enc.obj(res.apex), "inj1": enc.morphism(res.inj1), "inj2": enc.morphism(res.inj2)}
    return 0, envelope(cat, {**out, "objects": enc.objects})


def cmd_union(args):
    cat, pm = load(args.m)
    cat2, pn = load(args.n)
    if cat != cat2:
        raise FormatError(f"{args.n} is in {cat2}, expected {cat}", "category")
    m = _payload_morphism(Decoder(cat, pm.get("objects")), pm)
    n = _payload_morphism(Decoder(cat, pn.get("objects")), pn)
    M, N = _classes(args, cat, "mono,mono") if args.cls else (None, None)
    enc = Encoder()
    try:
        d = union_via_pushout(m, n, M, N)
    except HypothesisViolation as exc:
        return 1, envelope(cat, {"union": None, "reason": str(exc)})
    body = {
        "union": {
            "pullback": enc.obj(d.P),
            "p1": enc.morphism(d.p1),
            "p2": enc.morphism(d.p2),
            "U": enc.obj(d.U),
            "u1": enc.morphism(d.u1),
            "u2": enc.morphism(d.u2),
            "u": enc.morphism(d.u),
        },
        "defects": check_union(d),
        "hypotheses": {"M": M.name if M else None, "N": N.name if N else None},
        "objects": enc.objects,
    }
    return (1 if body["defects"] else 0), envelope(cat, body)


def cmd_vk_check(args):
    bound = _bound(args)
    cat, payload = load(args.file)
    dec = Decoder(cat, payload.get("objects"))
    sq = square_from_json(dec, payload.get("square", payload), "payload.square" if "square" in payload else "payload")
    vertical = parse_class(args.vertical_class, cat) if args.vertical_class else None
    enc = Encoder()
    v = check_van_kampen(sq, bound, vertical)
    body = {"bound": bound, "vertical_class": args.vertical_class, "verdict": _verdict(enc, v), "objects": enc.objects}
    return (0 if v.holds else 1), envelope(cat, body)


def cmd_adhesive_check(args):
    bound = _bound(args)
    cat = _category(args.category)
    M, N = _classes(args, cat, "mono,mono")
    span_bound = min(args.span_bound, bound)
    rep = check_MN_adhesive(cat, M, N, args.samples, bound, args.seed, span_bound)
    enc = Encoder()
    body = {
        "bound": bound,
        "span_bound": span_bound,
        "samples": args.samples,
        "seed": args.seed,
        "hypotheses": {"M": M.name, "N": N.name},
        "squares_checked": rep.squares_checked,
        "holds": rep.holds,
        "verdicts": {k: _verdict(enc, v) for k, v in rep.verdicts.items()},
        "objects": enc.objects,
    }
    return (0 if rep.holds else 1), envelope(cat, body)


def cmd_preadhesive_check(args):
    bound = _bound(args)
    cat = _category(args.category)
    M, N = _classes(args, cat, "mono,mono")
    rep = validate_preadhesive(M, N, cat, bound)
    enc = Encoder()
    body = {
        "bound": bound,
        "hypotheses": {"M": M.name, "N": N.name},
        "holds": rep.holds,
        "skipped_pushouts": rep.skipped_pushouts,
        "verdicts": {k: _verdict(enc, v) for k, v in rep.verdicts.items()},
        "objects": enc.objects,
    }
    return (0 if rep.holds else 1), envelope(cat, body)


def _site_json(enc: Encoder, site) -> dict:
    return {
        "objects": [enc.obj(X) for X in site.objects],
        "added_objects": [site.objects.index(X) for X in site.added],
        "arrows": [enc.morphism(f) for f in site.arrows],
        "covers": [
            {"target": c.target, "p": c.p, "q": c.q, "m": c.m, "n": c.n, "kernel": c.kernel}
            for c in site.all_covers()
        ],
        "coverage_failures": len(site.coverage_failures),
        "M": site.M.name,
        "N": site.N.name,
    }


def _presheaf(site, payload: dict, where: str) -> FinitePresheaf:
    if "representable" in payload:
        return representable(int(payload["representable"]), site)
    if "constant" in payload:
        return constant(site, int(payload["constant"]))
    try:
        sizes = tuple(int(x) for x in payload["sizes"])
        action = tuple(tuple(int(v) for v in row) for row in payload["action"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"presheaf needs integer 'sizes' and 'action' ({exc})", where) from None
    return FinitePresheaf(site, sizes, action)


def cmd_sheaf_check(args):
    cat, payload = load(args.site)
    dec = Decoder(cat, payload.get("objects"))
    objs = payload.get("site")
    if not isinstance(objs, list) or not objs:
        raise FormatError("expected a non-empty list of objects", "payload.site")
    objects = [dec.obj(o, f"payload.site[{i}]") for i, o in enumerate(objs)]
    M = parse_class(str(payload.get("M", "mono")), cat)
    N = parse_class(str(payload.get("N", "mono")), cat)
    site = build_site(cat, objects, M, N)
    enc = Encoder()
    body = {"site": _site_json(enc, site)}
    code = 0
    if args.presheaf:
        _, pp = load(args.presheaf)
        F = _presheaf(site, pp, "payload")
        try:
            F.check()
        except NotFunctorial as exc:
            raise FormatError(str(exc), "payload.action") from None
        results = {
            "amalgamation": is_sheaf_amalgamation(F),
            "pullback": is_sheaf_pullback(F),
            "mediator": is_sheaf_mediator(F),
        }
        body["presheaf"] = {"sizes": list(F.sizes)}
        body["verdicts"] = {
            k: {
                "holds": r.holds,
                "reason": r.reason,
                "cover": None if r.cover is None else {"target": r.cover.target, "p": r.cover.p, "q": r.cover.q},
                "family": None if r.family is None else list(r.family),
            }
            for k, r in results.items()
        }
        body["agree"] = len({r.holds for r in results.values()}) == 1
        code = 0 if all(r.holds for r in results.values()) else 1
    body["objects"] = enc.objects
    return code, envelope(cat, body)


def cmd_rewrite(args):
    cat, rp = load(args.rule)
    cat2, hp = load(args.host)
    if cat != cat2:
        raise FormatError(f"{args.host} is in {cat2}, expected {cat}", "category")
    dec = Decoder(cat, rp.get("objects"))
    rule = Rule(dec.morphism(rp.get("l"), "payload.l"), dec.morphism(rp.get("r"), "payload.r"), str(rp.get("name", "")))
    hdec = Decoder(cat, hp.get("objects"))
    host = hp.get("host", hp.get("object"))
    G = hdec.obj(host, "payload.host")
    rule_class = parse_class(args.rule_class, cat)
    try:
        rule.check(rule_class)
    except RuleError as exc:
        raise FormatError(str(exc), "payload.l") from None
    N = parse_class(args.cls or "mono", cat)
    bound = _bound(args) if args.all_complements else None
    enc = Encoder()
    steps = []
    for g in find_matches(rule, G, N):
        comp = pushout_complement(rule.l, g)
        if not comp:
            entry = {"match": enc.morphism(g), "result": None, "defect": comp.defect}
        else:
            H, step = rewrite(rule, g)
            entry = {"match": enc.morphism(g), "result": object_to_json(H), "comatch": enc.morphism(step.comatch)}
        if bound is not None:
            entry["all_complements"] = [
                {"D": object_to_json(c.D), "k": enc.morphism(c.k), "d": enc.morphism(c.d)}
                for c in all_complements(rule.l, g, bound)
            ]
        steps.append(entry)
    body = {
        "rule": rule.name,
        "hypotheses": {"rule_class": rule_class.name, "N": N.name},
        "steps": steps,
        "objects": enc.objects,
    }
    return 0, envelope(cat, body)


def cmd_enumerate(args):
    bound = _bound(args)
    cat = _category(args.category)
    objs = cat.enumerate(bound)
    return 0, envelope(cat, {"bound": bound, "count": len(objs), "objects": [object_to_json(X) for X in objs]})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adhesivity-lab", description="Bounded checks of adhesivity properties.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, bound=3):
        sp.add_argument("--bound", type=int, default=bound)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=25)
        sp.add_argument("--class", dest="cls", default=None, help="classes as M,N (N alone for rewrite)")

    for name, fn in (("pullback", cmd_pullback), ("pushout", cmd_pushout)):
        sp = sub.add_parser(name, help=f"{name} of two arrows given as payload.left and payload.right")
        sp.add_argument("file")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("union", help="union of two subobjects as a pushout over their pullback")
    sp.add_argument("m")
    sp.add_argument("n")
    common(sp)
    sp.set_defaults(fn=cmd_union)

    sp = sub.add_parser("vk-check", help="bounded Van Kampen check of a pushout square")
    sp.add_argument("file")
    common(sp)
    sp.add_argument("--vertical-class", default=None, help="restrict cube verticals to a class (reserved)")
    sp.set_defaults(fn=cmd_vk_check)

    for name, fn in (("adhesive-check", cmd_adhesive_check), ("preadhesive-check", cmd_preadhesive_check)):
        sp = sub.add_parser(name)
        sp.add_argument("category")
        common(sp, bound=3 if name == "adhesive-check" else 2)
        sp.set_defaults(fn=fn)
        if name == "adhesive-check":
            sp.add_argument("--span-bound", type=int, default=2)

    sp = sub.add_parser("sheaf-check", help="describe a site, and check a presheaf on it when given")
    sp.add_argument("site")
    sp.add_argument("presheaf", nargs="?")
    sp.set_defaults(fn=cmd_sheaf_check)

    sp = sub.add_parser("rewrite", help="apply a rule at every match in a host object")
    sp.add_argument("rule")
    sp.add_argument("host")
    common(sp)
    sp.add_argument("--rule-class", default="mono")
    sp.add_argument("--all-complements", action="store_true", help="also brute-force complements up to --bound")
    sp.set_defaults(fn=cmd_rewrite)

    sp = sub.add_parser("enumerate", help="objects up to isomorphism with at most --bound elements per sort")
    sp.add_argument("category")
    common(sp, bound=2)
    sp.set_defaults(fn=cmd_enumerate)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    random.seed(getattr(args, "seed", 0))
    try:
        code, doc = args.fn(args)
    except (FormatError, UsageError) as exc:
        print(dumps({"error": str(exc), "where": getattr(exc, "where", "")}), file=out)
        return 2
    except AdhesivityError as exc:
        print(dumps({"error": str(exc), "where": type(exc).__name__}), file=out)
        return 2
    print(dumps(doc), file=out)
    return code


def main() -> None:
    sys.exit(run())
