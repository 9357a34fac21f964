"""Command-line driver: ``fin2cat <command> ...``.

Exit status 0 means every requested check passed, 1 that some check failed
(the report says which), 2 a usage, input or budget problem.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .budget import use_budget
from .errors import Fin2CatError, FuelExhausted, SizeBudgetExceeded
from .report import Report

ANCHORS = {
    "category": "compose is defined exactly on composable pairs",
    "functor": "preserves sources/targets, identities, composition",
    "classify": "both an equivalence and isofibration",
    "limit": "defined by a 2-natural isomorphism",
    "sketch": "the full subcategory Inj(J) of J-injectives",
    "complete": "using Quillen's small object argument",
    "two_functor": "subject to the triangle equations",
    "pseudonat": "pseudonatural transformations and modifications",
    "span": "fully faithful on 1-cells and on 2-cells",
    "span_invert": "We define I(a, b) = b ∘ s_a",
    "mate": "Taking its mate",
    "monoidal": "satisfying Maclane's pentagon equation",
    "strong": "a natural isomorphism f_{a,b}: f(ab) ≅ (fa)(fb)",
    "strictify": "the objects of QX are words",
    "idempotent": "s ∘ l: QX → QX is an idempotent",
}


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--emit", metavar="PATH", help="write the constructed object (or report) here")
    p.add_argument("--quiet", action="store_true", help="omit witnesses and traces")
    p.add_argument("--max-objects", type=int, help="size budget for constructed categories")
    p.add_argument("--max-nodes", type=int, help="search node budget")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = argparse.ArgumentParser(prog="fin2cat", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("cat", help="finite categories and functors")
    cs = cat.add_subparsers(dest="action", required=True)
    p = cs.add_parser("validate", parents=[common], help="validate a category file")
    p.add_argument("file")
    p = cs.add_parser("functors", parents=[common], help="enumerate functors A → B")
    p.add_argument("source")
    p.add_argument("target")
    p = cs.add_parser("classify", parents=[common], help="classify a functor file")
    p.add_argument("file")

    p = sub.add_parser("limit", parents=[common], help="construct a 2-categorical limit")
    p.add_argument("--kind", required=True)
    p.add_argument("--input", nargs="+", default=[], metavar="FILE")
    p.add_argument("--alternate", action="store_true",
                   help="use the pullback-based construction (inserter, equifier)")
    p.add_argument("files", nargs="*")

    sk = sub.add_parser("sketch", help="sketches and doctrines")
    ss = sk.add_subparsers(dest="action", required=True)
    p = ss.add_parser("check", parents=[common], help="injectivity against a doctrine")
    p.add_argument("--doctrine", required=True, help="cat, tob or a doctrine file")
    p.add_argument("file")
    p = ss.add_parser("complete", parents=[common], help="small object argument")
    p.add_argument("--doctrine", required=True)
    p.add_argument("--fuel", type=int, default=10_000)
    p.add_argument("file")

    tw = sub.add_parser("twocat", help="presented 2-categories")
    ts = tw.add_subparsers(dest="action", required=True)
    p = ts.add_parser("validate", parents=[common],
                      help="check a presentation or a 2-functor assignment")
    p.add_argument("file")
    for name, hlp in (("ps-hom", "enumerate pseudonatural transformations"),
                      ("mate-inverse", "invert the pointwise equivalences")):
        p = ts.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--source", required=True)
        p.add_argument("--target", required=True)
        if name == "mate-inverse":
            p.add_argument("--index", type=int, help="only this pseudonatural (by position)")
    p = ts.add_parser("span-embed", parents=[common], help="pseudolimit span of a functor")
    p.add_argument("file")
    p = ts.add_parser("span-invert", parents=[common], help="functor of an image span")
    p.add_argument("file")

    mo = sub.add_parser("monoidal", help="monoidal categories")
    ms = mo.add_subparsers(dest="action", required=True)
    p = ms.add_parser("validate", parents=[common])
    p.add_argument("file")
    p = ms.add_parser("strictify", parents=[common])
    p.add_argument("--maxlen", type=int, required=True)
    p.add_argument("file")
    p = ms.add_parser("hom", parents=[common], help="strong monoidal functors X → Y")
    p.add_argument("source")
    p.add_argument("target")

    p = sub.add_parser("verify", parents=[common], help="run an acceptance suite")
    p.add_argument("suite", nargs="?")
    return top


# ---------------------------------------------------------------------------
# commands


def _cat_validate(a, rep):
    try:
        C = io.category_from_json(rep.input(a.file))
    except Fin2CatError as e:
        rep.check("category laws", ANCHORS["category"], False, witness=str(e))
        return None
    rep.check("category laws", ANCHORS["category"], True)
    rep.result = {"objects": C.n_obj, "morphisms": C.n_mor}
    return io.category_to_json(C)


def _cat_functors(a, rep):
    from .search import enumerate_functors
    A = io.category_from_json(rep.input(a.source))
    B = io.category_from_json(rep.input(a.target))
    Fs = enumerate_functors(A, B)
    rep.result = {"count": len(Fs)}
    return {"functors": [F.to_raw() for F in Fs]}


def _cat_classify(a, rep):
    from .classify import classify_functor
    F = io.functor_from_json(rep.input(a.file))
    cls = classify_functor(F)
    rep.check("classification cross-checks", ANCHORS["classify"], True)
    rep.result = {"flags": dict(sorted(cls.flags().items()))}
    return None


_LIMIT_ARGS = {
    "product": ("categories",), "power": ("base", "exponent"), "comma": ("f", "g"),
    "inserter": ("f", "g"), "equifier": ("alpha", "beta"), "inverter": ("alpha",),
    "splitting": ("e",), "pseudolimit-arrow": ("f",), "oplax-arrow": ("j",),
    "pullback": ("f", "p"),
}


def _limit_data(kind, files, rep):
    names = _LIMIT_ARGS.get(kind)
    if names is None:
        raise UsageError(f"unknown limit kind {kind!r}")
    paths = [rep.input(f) for f in files]
    if len(paths) == 1 and isinstance(io.read_json(paths[0]), dict) and \
            all(k in io.read_json(paths[0]) for k in names):
        doc, base = io.read_json(paths[0]), paths[0].parent
        items = [(doc[k], base) for k in names]
    elif kind == "product":
        return ([io.category_from_json(p) for p in paths],)
    elif len(paths) == len(names):
        items = [(str(p), Path(".")) for p in paths]
    else:
        raise UsageError(f"{kind} needs {', '.join(names)}")
    out = []
    for k, (d, base) in zip(names, items):
        if k == "categories":
            out.append([io.category_from_json(x, base) for x in d])
        elif k in ("base", "exponent"):
            out.append(io.category_from_json(d, base))
        elif k in ("alpha", "beta"):
            out.append(io.nat_from_json(d, base))
        else:
            out.append(io.functor_from_json(d, base))
    return tuple(out)


def _limit(a, rep):
    from .limits import pie_alternate, pie_limit
    data = _limit_data(a.kind, list(a.input) + list(a.files), rep)
    if a.alternate:
        L = pie_alternate(a.kind, *data, verify=True)
    else:
        L = pie_limit(a.kind, *data, verify=True)
    rep.check(f"{a.kind} universal property", ANCHORS["limit"], L.verified)
    rep.result = {"kind": a.kind, "apex_objects": L.apex.n_obj,
                  "apex_morphisms": L.apex.n_mor, "empty": L.is_empty}
    doc = io.category_to_json(L.apex)
    doc["cone"] = {"kind": L.kind,
                   "projections": [P.to_raw() for P in L.projections],
                   "cells": [io.nat_to_json(c)["components"] for c in L.cells]}
    return doc


def _doctrine(name, rep):
    from .sketches import doctrine
    if name in ("cat", "tob"):
        return doctrine(name)
    return io.doctrine_from_json(rep.input(name))


def _sketch_check(a, rep):
    from .sketches import is_injective
    D = _doctrine(a.doctrine, rep)
    S = io.sketch_from_json(rep.input(a.file))
    if S.cat is not D.ambient:
        raise UsageError(f"sketch level {S.cat.name} does not match doctrine {D.name}")
    for g in D.J:
        r = is_injective(S, g)
        wit = None if r.ok else {s: dict(sorted(r.witness.comp[s].items()))
                                 for s in S.cat.sorts if r.witness.comp[s]}
        rep.check(f"injective against {g.name}", ANCHORS["sketch"], r.ok, witness=wit)
    rep.result = {"doctrine": D.name, "maps": len(D.J)}
    return None


def _sketch_complete(a, rep):
    from .sketches import small_object_argument
    if a.fuel < 0:
        raise UsageError("fuel must be non-negative")
    D = _doctrine(a.doctrine, rep)
    S = io.sketch_from_json(rep.input(a.file))
    try:
        done = small_object_argument(S, D, a.fuel)
    except FuelExhausted as e:
        rep.check("completion within fuel", ANCHORS["complete"], False,
                  witness={"outstanding": len(e.outstanding)},
                  trace=[[c.round, c.map, c.attached] for c in e.trace])
        rep.result = {"cells": len(e.trace)}
        return io.sketch_to_json(e.partial)
    rep.check("completion within fuel", ANCHORS["complete"], True,
              trace=[[c.round, c.map, c.attached] for c in done.trace])
    rep.result = {"cells": done.productive_steps, "rounds": done.rounds,
                  "size": done.result.size()}
    return io.sketch_to_json(done.result)


def _twocat_validate(a, rep):
    from .twocat import validate_two_functor
    doc = io.read_json(rep.input(a.file))
    base = Path(a.file).parent
    if "presentation" in doc:
        asg = io.assignment_from_json(doc, base)
        bad = validate_two_functor(asg)
        rep.check("2-functor relations", ANCHORS["two_functor"], bad is None, witness=bad)
        rep.result = {"presentation": asg.pres.name}
    else:
        P = io.presentation_from_json(doc, base)
        rep.check("presentation well-typed", ANCHORS["two_functor"], True)
        rep.result = {"presentation": P.name, **P.counts()}
    return None


def _ps_hom(a, rep):
    from .twocat import enumerate_pseudonaturals
    F = io.assignment_from_json(str(rep.input(a.source)))
    G = io.assignment_from_json(str(rep.input(a.target)))
    ts = enumerate_pseudonaturals(F, G)
    rep.check("every listed transformation is pseudonatural", ANCHORS["pseudonat"], True)
    rep.result = {"count": len(ts)}
    return {"pseudonaturals": [io.pseudonat_to_json(t) for t in ts]}


def _mate_inverse(a, rep):
    from .classify import classify_functor
    from .twocat import enumerate_pseudonaturals, mate_inverse, pseudonat_violation
    F = io.assignment_from_json(str(rep.input(a.source)))
    G = io.assignment_from_json(str(rep.input(a.target)))
    ts = enumerate_pseudonaturals(F, G)
    idx = range(len(ts)) if a.index is None else [a.index]
    out = []
    for k in idx:
        if not 0 <= k < len(ts):
            raise UsageError(f"no pseudonatural transformation at index {k}")
        t = ts[k]
        if not all(classify_functor(t.comp[x], flags=("equivalence",)).equivalence
                   for x in t.comp):
            continue
        m = mate_inverse(t)
        ok = pseudonat_violation(m.u) is None
        rep.check(f"mate inverse of #{k:03d}", ANCHORS["mate"], ok)
        out.append({"index": k, "inverse": io.pseudonat_to_json(m.u)})
    rep.result = {"pseudonaturals": len(ts), "pointwise_equivalences": len(out)}
    return {"inverses": out}


def _span_embed(a, rep):
    from .twocat import check_span_image, span_embed
    F = io.functor_from_json(str(rep.input(a.file)))
    sp = span_embed(F)
    rep.check("span lies in the image", ANCHORS["span"], check_span_image(sp))
    rep.result = {"apex_objects": sp.apex.n_obj, "apex_morphisms": sp.apex.n_mor}
    return io.span_to_json(sp)


def _span_invert(a, rep):
    from .errors import NotInImage
    from .twocat import span_invert
    sp = io.span_from_json(str(rep.input(a.file)))
    try:
        F = span_invert(sp)
    except NotInImage as e:
        rep.check("span lies in the image", ANCHORS["span_invert"], False, witness=str(e))
        return None
    rep.check("span lies in the image", ANCHORS["span_invert"], True)
    return io.functor_to_json(F)


def _monoidal_validate(a, rep):
    from .errors import MonoidalError
    try:
        X = io.monoidal_from_json(str(rep.input(a.file)))
    except MonoidalError as e:
        rep.check("coherence axioms", ANCHORS["monoidal"], False, witness=str(e))
        return None
    rep.check("coherence axioms", ANCHORS["monoidal"], True)
    rep.result = {"semi": X.semi, "objects": X.base.n_obj}
    return None


def _monoidal_strictify(a, rep):
    from .monoidal import idempotent_sl, path_independence_failures, strictify
    if a.maxlen < 1:
        raise UsageError("--maxlen must be at least 1")
    X = io.monoidal_from_json(str(rep.input(a.file)))
    S = strictify(X, a.maxlen)
    for name, ok in S.checks.items():
        rep.check(name, ANCHORS["strictify"], ok)
    e = idempotent_sl(S)
    rep.check("s∘l idempotent", ANCHORS["idempotent"], e["idempotent"])
    rep.check("(s, l) splits s∘l", ANCHORS["idempotent"], e["splits"])
    bad = path_independence_failures(X, a.maxlen)
    rep.check("structural isomorphisms path independent", ANCHORS["strictify"], not bad,
              witness=[repr(t) for t in bad[:5]] or None)
    rep.result = {"words": S.Q.n_obj, "morphisms": S.Q.n_mor}
    return io.category_to_json(S.Q)


def _monoidal_hom(a, rep):
    from .monoidal import enumerate_strong_monoidal_functors
    X = io.monoidal_from_json(str(rep.input(a.source)))
    Y = io.monoidal_from_json(str(rep.input(a.target)))
    Ss = enumerate_strong_monoidal_functors(X, Y)
    rep.check("listed functors are strong monoidal", ANCHORS["strong"], True)
    rep.result = {"count": len(Ss)}
    D = Y.base
    return {"functors": [{**S.F.to_raw(),
                          "coherence": [[X.base.objects[p], X.base.objects[q], D.morphisms[m]]
                                        for (p, q), m in sorted(S.coh.items())],
                          "unit": None if S.unit_iso is None else D.morphisms[S.unit_iso]}
                         for S in Ss]}


def _verify(a, rep):
    from .verify import run_suite
    suite = None
    base = Path(".")
    if a.suite:
        suite = io.read_json(rep.input(a.suite))
        base = Path(a.suite).parent
    run_suite(suite, base, rep, seed=a.seed, echo=None if a.quiet else _stderr)
    return None


def _stderr(line: str) -> None:
    print(line, file=sys.stderr)


DISPATCH = {
    ("cat", "validate"): _cat_validate, ("cat", "functors"): _cat_functors,
    ("cat", "classify"): _cat_classify, ("limit", None): _limit,
    ("sketch", "check"): _sketch_check, ("sketch", "complete"): _sketch_complete,
    ("twocat", "validate"): _twocat_validate, ("twocat", "ps-hom"): _ps_hom,
    ("twocat", "mate-inverse"): _mate_inverse, ("twocat", "span-embed"): _span_embed,
    ("twocat", "span-invert"): _span_invert, ("monoidal", "validate"): _monoidal_validate,
    ("monoidal", "strictify"): _monoidal_strictify, ("monoidal", "hom"): _monoidal_hom,
    ("verify", None): _verify,
}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        a = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    rep = Report(argv)
    overrides = {}
    if a.max_objects is not None:
        overrides["max_objects"] = a.max_objects
    if a.max_nodes is not None:
        overrides["max_nodes"] = a.max_nodes
    fn = DISPATCH[(a.command, getattr(a, "action", None))]
    try:
        with use_budget(**overrides):
            emitted = fn(a, rep)
            text = rep.render(a.quiet)
    except (UsageError, ValueError, OSError, json.JSONDecodeError, KeyError,
            SizeBudgetExceeded, io.FormatError) as e:
        print(f"fin2cat: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except Fin2CatError as e:
        # a malformed input that the constructors reject
        print(f"fin2cat: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    stdout.write(text)
    if a.emit:
        Path(a.emit).write_text(io.dumps(emitted) if emitted is not None else text,
                                encoding="utf-8")
    return rep.exit_status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
