"""JSON documents for categories, functors, sketches, presentations and monoidal data.

Wherever a document expects a sub-document it also accepts a path string,
resolved relative to the directory of the file that mentions it.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .category import (FinCategory, FinFunctor, NatTransf, category_from_raw,
                       functor_from_names, nat_from_names, product_category)
from .errors import Fin2CatError
from .sketches import doctrines as dct
from .sketches.core import SketchObject, make_map
from .sketches.levels import CSK, GPH, TSK, csketch, edges_of, graph, identities_of, \
    triangles_of, tsketch


class FormatError(Fin2CatError):
    """A document does not follow the expected JSON layout."""


def read_json(path) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def dumps(doc) -> str:
    """Canonical rendering: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _resolve(doc, base: Path):
    """(document, directory for nested paths)."""
    if isinstance(doc, (str, Path)):
        p = (base / doc) if not Path(doc).is_absolute() else Path(doc)
        return read_json(p), p.parent
    return doc, base


def _need(doc, *keys, what="document"):
    if not isinstance(doc, dict):
        raise FormatError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise FormatError(f"{what} lacks {', '.join(missing)}")


# ---------------------------------------------------------------------------
# categories, functors, natural transformations


def category_to_json(C: FinCategory) -> dict:
    doc = C.to_raw()
    if C.label:
        doc["name"] = C.label
    return doc


def category_from_json(doc, base: Path = Path(".")) -> FinCategory:
    doc, _ = _resolve(doc, base)
    _need(doc, "objects", "morphisms", "identities", "compose", what="category")
    morphisms = [(m["id"], m["src"], m["tgt"]) if isinstance(m, dict) else tuple(m)
                 for m in doc["morphisms"]]
    raw = dict(doc)
    raw["morphisms"] = morphisms
    return category_from_raw(raw, label=doc.get("name", ""))


def functor_to_json(F: FinFunctor, inline: bool = True) -> dict:
    doc = F.to_raw()
    if inline:
        doc["source"] = category_to_json(F.source)
        doc["target"] = category_to_json(F.target)
    return doc


def functor_from_json(doc, base: Path = Path("."), source: FinCategory | None = None,
                      target: FinCategory | None = None) -> FinFunctor:
    doc, base = _resolve(doc, base)
    _need(doc, "object_map", what="functor")
    A = source if source is not None else category_from_json(doc["source"], base)
    B = target if target is not None else category_from_json(doc["target"], base)
    return functor_from_names(A, B, doc["object_map"], doc.get("morphism_map", {}),
                              label=doc.get("name", ""))


def nat_to_json(t: NatTransf) -> dict:
    A, B = t.dom, t.cod
    return {"source": functor_to_json(t.source), "target": functor_to_json(t.target),
            "components": {A.objects[a]: B.morphisms[m] for a, m in enumerate(t.components)}}


def nat_from_json(doc, base: Path = Path("."), source: FinFunctor | None = None,
                  target: FinFunctor | None = None) -> NatTransf:
    doc, base = _resolve(doc, base)
    _need(doc, "components", what="natural transformation")
    F = source if source is not None else functor_from_json(doc["source"], base)
    G = target if target is not None else functor_from_json(
        doc["target"], base, source=F.source, target=F.target)
    return nat_from_names(F, G, doc["components"])


# ---------------------------------------------------------------------------
# sketches


def sketch_to_json(S: SketchObject) -> dict:
    if S.cat is GPH:
        return {"level": "gph", "base": {"vertices": list(S.elems["V"])},
                "markings": {"E": [{"id": e, "value": list(v)}
                                   for e, v in edges_of(S).items()]}}
    if S.cat is CSK:
        return {"level": "csk", "base": sketch_to_json(S.base()),
                "markings": {"T": [{"id": m, "value": list(v)}
                                   for m, v in triangles_of(S).items()],
                             "I": [{"id": m, "value": v} for m, v in identities_of(S).items()]},
                **({"name": S.label} if S.label else {})}
    if S.cat is TSK:
        return {"level": "tsk", "base": sketch_to_json(S.base()),
                "markings": {"Term": [{"id": m, "value": S.faces["Term"][m][0]}
                                      for m in S.elems["Term"]]},
                **({"name": S.label} if S.label else {})}
    raise FormatError(f"no file format for sketches in {S.cat.name}")


def _marks(doc, sort):
    out = {}
    for item in doc.get("markings", {}).get(sort, []):
        _need(item, "id", "value", what=f"{sort} marking")
        out[item["id"]] = item["value"]
    return out


def sketch_from_json(doc, base: Path = Path(".")) -> SketchObject:
    doc, base = _resolve(doc, base)
    _need(doc, "level", "base", what="sketch")
    level = doc["level"]
    if level == "gph":
        b = doc["base"]
        vs = b["vertices"] if isinstance(b, dict) else b
        return graph(vs, {e: tuple(v) for e, v in _marks(doc, "E").items()})
    if level == "csk":
        G = sketch_from_json(doc["base"], base)
        if G.cat is not GPH:
            raise FormatError("a csk sketch needs a gph base")
        return csketch(G.elems["V"], edges_of(G),
                       {m: tuple(v) for m, v in _marks(doc, "T").items()},
                       _marks(doc, "I"), label=doc.get("name", ""))
    if level == "tsk":
        C = sketch_from_json(doc["base"], base)
        if C.cat is not CSK:
            raise FormatError("a tsk sketch needs a csk base")
        return tsketch(C, _marks(doc, "Term"), label=doc.get("name", ""))
    raise FormatError(f"unknown sketch level {level!r}")


def doctrine_to_json(D: dct.DoctrineSpec) -> dict:
    return {"name": D.name, "maps": [
        {"name": g.name, "provenance": g.provenance, "source": sketch_to_json(g.map.src),
         "target": sketch_to_json(g.map.tgt),
         "components": {s: dict(sorted(g.map.comp[s].items())) for s in g.map.src.cat.sorts
                        if g.map.comp[s]}}
        for g in D.J]}


def doctrine_from_json(doc, base: Path = Path(".")) -> dct.DoctrineSpec:
    doc, base = _resolve(doc, base)
    _need(doc, "maps", what="doctrine")
    J = []
    for k, m in enumerate(doc["maps"]):
        _need(m, "source", "target", what="doctrine map")
        X, Y = sketch_from_json(m["source"], base), sketch_from_json(m["target"], base)
        if X.cat is not Y.cat:
            raise FormatError(f"doctrine map {k} mixes sketch levels")
        J.append(dct.GenMap(m.get("name", f"map{k}"), make_map(X, Y, m.get("components", {})),
                            m.get("provenance", "file")))
    if not J:
        return dct.DoctrineSpec(doc.get("name", "file"), CSK, ())
    return dct.DoctrineSpec(doc.get("name", "file"), J[0].map.src.cat, tuple(J))


# ---------------------------------------------------------------------------
# presentations and 2-functor assignments


def _word_json(w) -> dict:
    return {"at": w.src, "cells": list(w.cells)}


def _paste_json(p) -> dict:
    return {"src_word": list(p.src.cells), "at": p.src.src,
            "steps": [{"pre": list(s.pre), "gen": s.gen, "post": list(s.post),
                       **({"inverse": True} if s.inverse else {})} for s in p.steps]}


def presentation_to_json(P) -> dict:
    return {
        "name": P.name, "objects": list(P.objects),
        "one_cells": [{"id": c, "src": s, "tgt": t} for c, (s, t) in P.one_cells.items()],
        "two_cells": [{"id": g, "at": v.src.src, "src_word": list(v.src.cells),
                       "tgt_word": list(v.tgt.cells), "invertible": v.invertible}
                      for g, v in P.two_cells.items()],
        "relations": [{"name": r.name, "lhs": _paste_json(r.lhs), "rhs": _paste_json(r.rhs)}
                      for r in P.relations],
        "rules": [[list(a), list(b)] for a, b in P.rules],
    }


def _start(P, cells, at):
    if at is not None:
        return at
    if not cells:
        raise FormatError("an empty word needs an 'at' object")
    return P.one_cells[cells[0]][0]


def presentation_from_json(doc, base: Path = Path(".")):
    from . import twocat as tc
    doc, base = _resolve(doc, base)
    if "standard" in doc:
        A = category_from_json(doc["category"], base) if "category" in doc else None
        return tc.standard_presentation(doc["standard"], A)
    _need(doc, "objects", "one_cells", what="presentation")
    ones = {c["id"]: (c["src"], c["tgt"]) for c in doc["one_cells"]}
    rules = tuple((tuple(a), tuple(b)) for a, b in doc.get("rules", []))
    P0 = tc.Presentation(doc.get("name", ""), tuple(doc["objects"]), ones, {}, (), rules)
    twos = {}
    for g in doc.get("two_cells", []):
        _need(g, "id", "src_word", "tgt_word", what="2-cell")
        x = _start(P0, g["src_word"] or g["tgt_word"], g.get("at"))
        twos[g["id"]] = (x, tuple(g["src_word"]), tuple(g["tgt_word"]),
                         bool(g.get("invertible", False)))
    P1 = tc._pres(P0.name, P0.objects, ones, twos, (), rules)
    rels = []
    for k, r in enumerate(doc.get("relations", [])):
        if isinstance(r, list):
            r = {"name": f"relation {k}", "lhs": r[0], "rhs": r[1]}
        rels.append(tc.Relation(r.get("name", f"relation {k}"), _paste(P1, r["lhs"]),
                                _paste(P1, r["rhs"])))
    return tc._pres(P0.name, P0.objects, ones, twos, rels, rules)


def _paste(P, doc):
    from . import twocat as tc
    cells = tuple(doc.get("src_word", ()))
    x = _start(P, cells, doc.get("at"))
    steps = tuple(tc.Step(tuple(s.get("pre", ())), s["gen"], tuple(s.get("post", ())),
                          bool(s.get("inverse", False))) for s in doc.get("steps", ()))
    return tc.Paste(P.word(x, *cells), steps)


def assignment_from_json(doc, base: Path = Path(".")):
    """A 2-functor out of a presentation into finite categories."""
    from . import twocat as tc
    doc, base = _resolve(doc, base)
    _need(doc, "presentation", "objects", what="2-functor assignment")
    P = presentation_from_json(doc["presentation"], base)
    obj = {x: category_from_json(doc["objects"][x], base) for x in P.objects}
    one = {}
    for c, (s, t) in P.one_cells.items():
        one[c] = functor_from_json(doc.get("one_cells", {})[c], base, obj[s], obj[t])
    asg = tc.TwoFunctor(P, obj, one, {}, doc.get("name", ""))
    two = {}
    for g, gen in P.two_cells.items():
        F, G = asg.word(gen.src), asg.word(gen.tgt)
        two[g] = nat_from_json(doc.get("two_cells", {})[g], base, F, G)
    return tc.TwoFunctor(P, obj, one, two, doc.get("name", ""))


def assignment_to_json(asg) -> dict:
    return {"name": asg.label, "presentation": presentation_to_json(asg.pres),
            "objects": {x: category_to_json(C) for x, C in asg.obj.items()},
            "one_cells": {c: F.to_raw() for c, F in asg.one.items()},
            "two_cells": {g: {"components": nat_to_json(t)["components"]}
                          for g, t in asg.two.items()}}


def pseudonat_to_json(t) -> dict:
    return {"components": {x: F.to_raw() for x, F in t.comp.items()},
            "cells": {r: nat_to_json(a)["components"] for r, a in t.cell.items()}}


def span_to_json(sp) -> dict:
    return {"apex": category_to_json(sp.apex),
            "left": {**sp.left.to_raw(), "target": category_to_json(sp.left.target)},
            "right": {**sp.right.to_raw(), "target": category_to_json(sp.right.target)}}


def span_from_json(doc, base: Path = Path(".")):
    from .twocat import Span
    doc, base = _resolve(doc, base)
    _need(doc, "apex", "left", "right", what="span")
    R = category_from_json(doc["apex"], base)
    return Span(functor_from_json(doc["left"], base, source=R),
                functor_from_json(doc["right"], base, source=R))


# ---------------------------------------------------------------------------
# monoidal categories


def monoidal_from_json(doc, base: Path = Path(".")):
    """Category document plus ``tensor``, ``unit``, ``associator`` and ``unitors``.

    ``tensor.objects`` lists [a, b, a⊗b]; ``tensor.morphisms`` lists [f, g, f⊗g];
    ``associator`` lists [a, b, c, α_abc]; ``unitors`` has ``left`` and ``right``
    maps from objects to morphisms.  A null ``unit`` means semi-monoidal.
    """
    from .category import FinFunctor as _F
    from .monoidal import validate_monoidal
    doc, base = _resolve(doc, base)
    _need(doc, "tensor", "associator", what="monoidal category")
    C = category_from_json(doc, base)
    sq = product_category(C, C)
    to = {(a, b): ab for a, b, ab in doc["tensor"]["objects"]}
    tmor = {(f, g): fg for f, g, fg in doc["tensor"]["morphisms"]}
    try:
        omap = tuple(C.obj(to[(C.objects[a], C.objects[b])]) for a, b in sq.okeys)
        mmap = []
        for f, g in sq.mkeys:
            key = (C.morphisms[f], C.morphisms[g])
            if key in tmor:
                mmap.append(C.mor(tmor[key]))
            elif C.is_identity(f) and C.is_identity(g):
                mmap.append(C.id(omap[sq.oindex((C.src[f], C.src[g]))]))
            else:
                raise FormatError(f"tensor of {key} is missing")
    except KeyError as e:
        raise FormatError(f"tensor table is incomplete at {e}") from None
    tensor = _F(sq, C, omap, tuple(mmap), "⊗")
    assoc = {(C.obj(a), C.obj(b), C.obj(c)): C.mor(m) for a, b, c, m in doc["associator"]}
    unit = doc.get("unit")
    u = None if unit is None else C.obj(unit)
    un = doc.get("unitors", {})
    lu = {C.obj(a): C.mor(m) for a, m in un.get("left", {}).items()}
    ru = {C.obj(a): C.mor(m) for a, m in un.get("right", {}).items()}
    return validate_monoidal(C, tensor, u, assoc, lu, ru, doc.get("name", C.label))


def monoidal_to_json(X) -> dict:
    C = X.base
    doc = category_to_json(C)
    n = C.n_obj
    doc["tensor"] = {
        "objects": [[C.objects[a], C.objects[b], C.objects[X.t(a, b)]]
                    for a in range(n) for b in range(n)],
        "morphisms": [[C.morphisms[f], C.morphisms[g], C.morphisms[X.tm(f, g)]]
                      for f in range(C.n_mor) for g in range(C.n_mor)],
    }
    doc["unit"] = None if X.semi else C.objects[X.unit]
    doc["associator"] = [[C.objects[a], C.objects[b], C.objects[c], C.morphisms[m]]
                         for (a, b, c), m in sorted(X.assoc.items())]
    if not X.semi:
        doc["unitors"] = {"left": {C.objects[a]: C.morphisms[m] for a, m in X.lunit.items()},
                          "right": {C.objects[a]: C.morphisms[m] for a, m in X.runit.items()}}
    if X.label:
        doc["name"] = X.label
    return doc
