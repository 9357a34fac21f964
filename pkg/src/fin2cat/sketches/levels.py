"""The concrete sketch categories: graphs, category sketches, terminal-object sketches.

Sort names are global across levels: ``V`` (vertices / points of a set),
``E`` (edges, marker 2 in FinSet), ``T`` and ``I`` (marked triangles and
marked loops, markers in Gph) and ``Term`` (marked objects, marker in C-Sk).
"""
from __future__ import annotations

from typing import Mapping, Sequence

from .core import FINSET, SketchObject, make_object, slash_construction

TWO = make_object(FINSET, {"V": ("s", "t")}, {}, label="2")
GPH = slash_construction(FINSET, {"E": TWO}, name="Gph")


def graph(vertices: Sequence, edges: Mapping) -> SketchObject:
    """A directed graph; ``edges`` maps edge names to (source, target)."""
    return make_object(GPH, {"V": tuple(vertices), "E": tuple(edges)},
                       {"E": dict(edges)})


TRIANGLE = graph(("0", "1", "2"), {"f": ("0", "1"), "g": ("1", "2"), "h": ("0", "2")})
LOOP = graph(("0",), {"i": ("0", "0")})
CSK = slash_construction(GPH, {"T": TRIANGLE, "I": LOOP}, name="C-Sk")


def csketch(vertices: Sequence, edges: Mapping, triangles: Mapping | None = None,
            identities: Mapping | None = None, label: str = "") -> SketchObject:
    """A category sketch.

    ``triangles`` maps a mark to ``(f, g, h)`` meaning the triangle with
    first edge f, second edge g and composite edge h (read g∘f = h);
    ``identities`` maps a mark to a loop.
    """
    triangles = dict(triangles or {})
    identities = dict(identities or {})
    faces = {"E": dict(edges), "T": {}, "I": {}}
    for m, (f, g, h) in triangles.items():
        faces["T"][m] = (edges[f][0], edges[f][1], edges[g][1], f, g, h)
    for m, e in identities.items():
        faces["I"][m] = (edges[e][0], e)
    return make_object(CSK, {"V": tuple(vertices), "E": tuple(edges),
                             "T": tuple(triangles), "I": tuple(identities)},
                       faces, label=label)


POINT = make_object(CSK, {"V": ("•",)}, {}, label="T")
TSK = slash_construction(CSK, {"Term": POINT}, name="T-Sk")


def tsketch(base: SketchObject, terminal: Mapping | Sequence = (), label: str = "") -> SketchObject:
    """Equip a category sketch with marked ("terminal") vertices.

    ``terminal`` maps mark names to vertices, or is a list of vertices
    (marks are then named after them).
    """
    if not isinstance(terminal, Mapping):
        terminal = {f"τ{v}": v for v in terminal}
    elems = {s: base.elems[s] for s in CSK.sorts}
    elems["Term"] = tuple(terminal)
    faces = {s: base.faces[s] for s in CSK.sorts}
    faces["Term"] = {m: (v,) for m, v in terminal.items()}
    return make_object(TSK, elems, faces, label=label)


def triangles_of(S: SketchObject) -> dict:
    """mark -> (f, g, h) for a category sketch."""
    return {m: S.faces["T"][m][3:] for m in S.elems["T"]}


def identities_of(S: SketchObject) -> dict:
    return {m: S.faces["I"][m][1] for m in S.elems["I"]}


def edges_of(S: SketchObject) -> dict:
    return {e: S.faces["E"][e] for e in S.elems["E"]}
