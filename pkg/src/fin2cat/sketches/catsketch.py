"""Categories as category sketches, and back."""
from __future__ import annotations

from ..category import FinCategory, validate_category
from ..errors import CategoryError, InternalConsistencyError, NotACategory
from . import doctrines as d
from .core import SketchObject
from .levels import CSK, csketch, edges_of, identities_of, triangles_of


def sketch_of_category(A: FinCategory) -> SketchObject:
    """Underlying graph with all commutative triangles and identities marked."""
    edges = {A.morphisms[m]: (A.objects[A.src[m]], A.objects[A.tgt[m]])
             for m in range(A.n_mor)}
    tris = {}
    for (g, f), h in sorted(A.table.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        tris[f"[{A.morphisms[f]},{A.morphisms[g]}]"] = (
            A.morphisms[f], A.morphisms[g], A.morphisms[h])
    ids = {f"id[{A.objects[a]}]": A.morphisms[A.id(a)] for a in range(A.n_obj)}
    return csketch(A.objects, edges, tris, ids, label=f"sk({A.label})")


def category_of_sketch(S: SketchObject, label: str = "") -> FinCategory:
    """Reconstruct a category, or raise NotACategory naming the violated map.

    This is a direct structural check, independent of the injectivity search.
    """
    if S.cat is not CSK:
        raise NotACategory("level", "expected a category sketch")
    edges = edges_of(S)
    tris = triangles_of(S)
    ids = identities_of(S)
    if len(set(tris.values())) != len(tris):
        raise NotACategory(d.T_INJ)
    if len(set(ids.values())) != len(ids):
        raise NotACategory(d.I_INJ)
    comp: dict = {}
    for f, g, h in tris.values():
        if (f, g) in comp:
            raise NotACategory(d.COMP_UNIQ, f"{g}∘{f}")
        comp[(f, g)] = h
    out_of: dict = {}
    for e, (s, t) in edges.items():
        out_of.setdefault(s, []).append(e)
    for f, (s, t) in edges.items():
        for g in out_of.get(t, ()):
            if (f, g) not in comp:
                raise NotACategory(d.COMP_EX, f"{g}∘{f}")
    ident: dict = {}
    for e in ids.values():
        v = edges[e][0]
        if v in ident:
            raise NotACategory(d.ID_UNIQ, v)
        ident[v] = e
    for v in S.elems["V"]:
        if v not in ident:
            raise NotACategory(d.ID_EX, v)
    for f, (s, t) in edges.items():
        if comp[(ident[s], f)] != f:
            raise NotACategory(d.UNIT_FIRST, f)
        if comp[(f, ident[t])] != f:
            raise NotACategory(d.UNIT_SECOND, f)
    for (f, g), gf in comp.items():
        for h in out_of.get(edges[g][1], ()):
            if comp[(gf, h)] != comp[(f, comp[(g, h)])]:
                raise NotACategory(d.ASSOC, f"{h},{g},{f}")
    try:
        return validate_category(
            S.elems["V"], [(e, s, t) for e, (s, t) in edges.items()],
            ident, [(g, f, h) for (f, g), h in comp.items()],
            label=label or S.label)
    except CategoryError as exc:   # pragma: no cover - the checks above are complete
        raise InternalConsistencyError(f"sketch passed all checks but {exc}") from exc
