"""Doctrine specifications: a sketch category plus generating maps J.

The cat doctrine's maps are transcribed from the drawn figures where there
is one; the remaining maps are rebuilt by analogy and labelled
``reconstructed``.  The tob doctrine is DJ (each cat map pushed along the
left adjoint D, which adds an empty marking) together with five maps.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..budget import NodeCounter
from .core import (SketchCategory, SketchObject, SkMap, find_extension, first_unfilled,
                   inclusion, iter_homs, make_map, make_object)
from .levels import CSK, TSK, csketch, tsketch

# witness names, shared with category_of_sketch
T_INJ = "T-marking injectivity"
I_INJ = "I-marking injectivity"
COMP_EX = "composite existence"
COMP_UNIQ = "composite uniqueness"
ID_EX = "identity existence"
ID_UNIQ = "identity uniqueness"
UNIT_FIRST = "unit law (identity first)"
UNIT_SECOND = "unit law (identity second)"
ASSOC = "associativity"
ASSOC_REV = "associativity (reverse)"
ID_SELF = "identity self-composite"

TERM_INJ = "terminal-marking injectivity"
TERM_NONEMPTY = "terminal non-emptiness"
TERM_EX = "terminality: existence"
TERM_UNIQ = "terminality: uniqueness"
TERM_REPLETE = "repleteness"


@dataclass(frozen=True, eq=False)
class GenMap:
    name: str
    map: SkMap
    provenance: str          # "figure" | "text" | "reconstructed" | "D(...)"
    kind: str = field(init=False)

    def __post_init__(self):
        if self.map.is_mono():
            k = "existence"
        elif self.map.is_epi():
            k = "uniqueness"
        else:
            k = "mixed"
        object.__setattr__(self, "kind", k)


@dataclass(frozen=True, eq=False)
class DoctrineSpec:
    name: str
    ambient: SketchCategory
    J: tuple

    def __len__(self):
        return len(self.J)

    def by_name(self, name: str) -> GenMap:
        return next(g for g in self.J if g.name == name)


# ---------------------------------------------------------------------------
# the cat doctrine


def _ident_map(X: SketchObject, Y: SketchObject, rename: dict | None = None, label: str = ""):
    rename = rename or {}
    comp = {s: {x: rename.get(s, {}).get(x, x) for x in X.elems[s]} for s in X.cat.sorts}
    return make_map(X, Y, comp, label)


def _cat_maps() -> list:
    tri = {"f": ("0", "1"), "g": ("1", "2"), "h": ("0", "2")}
    V3 = ("0", "1", "2")
    out = []

    X = csketch(V3, tri, {"u": ("f", "g", "h"), "v": ("f", "g", "h")})
    Y = csketch(V3, tri, {"w": ("f", "g", "h")})
    out.append(GenMap(T_INJ, _ident_map(X, Y, {"T": {"u": "w", "v": "w"}}), "figure"))

    X = csketch(("0",), {"i": ("0", "0")}, identities={"u": "i", "v": "i"})
    Y = csketch(("0",), {"i": ("0", "0")}, identities={"w": "i"})
    out.append(GenMap(I_INJ, _ident_map(X, Y, {"I": {"u": "w", "v": "w"}}), "figure"))

    X = csketch(V3, {"f": ("0", "1"), "g": ("1", "2")})
    Y = csketch(V3, tri, {"=": ("f", "g", "h")})
    out.append(GenMap(COMP_EX, inclusion(X, Y), "figure"))

    X = csketch(V3, {"f": ("0", "1"), "g": ("1", "2"), "h1": ("0", "2"), "h2": ("0", "2")},
                {"=1": ("f", "g", "h1"), "=2": ("f", "g", "h2")})
    Y = csketch(V3, tri, {"=": ("f", "g", "h")})
    out.append(GenMap(COMP_UNIQ, _ident_map(X, Y, {"E": {"h1": "h", "h2": "h"},
                                                  "T": {"=1": "=", "=2": "="}}), "figure"))

    X = csketch(("0",), {})
    Y = csketch(("0",), {"i": ("0", "0")}, identities={"i": "i"})
    out.append(GenMap(ID_EX, inclusion(X, Y), "text"))

    X = csketch(("0",), {"i1": ("0", "0"), "i2": ("0", "0")}, identities={"i1": "i1", "i2": "i2"})
    Y = csketch(("0",), {"i": ("0", "0")}, identities={"i": "i"})
    out.append(GenMap(ID_UNIQ, _ident_map(X, Y, {"E": {"i1": "i", "i2": "i"},
                                                "I": {"i1": "i", "i2": "i"}}), "text"))

    edges = {"i": ("0", "0"), "f": ("0", "1")}
    X = csketch(("0", "1"), edges, identities={"i": "i"})
    Y = csketch(("0", "1"), edges, {"=": ("i", "f", "f")}, identities={"i": "i"})
    out.append(GenMap(UNIT_FIRST, inclusion(X, Y), "figure"))

    edges = {"f": ("0", "1"), "i": ("1", "1")}
    X = csketch(("0", "1"), edges, identities={"i": "i"})
    Y = csketch(("0", "1"), edges, {"=": ("f", "i", "f")}, identities={"i": "i"})
    out.append(GenMap(UNIT_SECOND, inclusion(X, Y), "reconstructed"))

    V4 = ("0", "1", "2", "3")
    edges = {"f": ("0", "1"), "g": ("1", "2"), "h": ("2", "3"), "gf": ("0", "2"),
             "hg": ("1", "3"), "k": ("0", "3")}
    X = csketch(V4, edges, {"a": ("f", "g", "gf"), "b": ("g", "h", "hg"), "c": ("gf", "h", "k")})
    Y = csketch(V4, edges, {"a": ("f", "g", "gf"), "b": ("g", "h", "hg"), "c": ("gf", "h", "k"),
                            "d": ("f", "hg", "k")})
    out.append(GenMap(ASSOC, inclusion(X, Y), "reconstructed"))

    X = csketch(V4, edges, {"a": ("f", "g", "gf"), "b": ("g", "h", "hg"), "d": ("f", "hg", "k")})
    Y = csketch(V4, edges, {"a": ("f", "g", "gf"), "b": ("g", "h", "hg"), "c": ("gf", "h", "k"),
                            "d": ("f", "hg", "k")})
    out.append(GenMap(ASSOC_REV, inclusion(X, Y), "reconstructed"))

    X = csketch(("0",), {"i": ("0", "0")}, identities={"i": "i"})
    Y = csketch(("0",), {"i": ("0", "0")}, {"=": ("i", "i", "i")}, identities={"i": "i"})
    out.append(GenMap(ID_SELF, inclusion(X, Y), "reconstructed"))
    return out


# ---------------------------------------------------------------------------
# the tob doctrine


def D(S: SketchObject) -> SketchObject:
    """Left adjoint to the forgetful T-Sk → C-Sk: the empty terminal marking."""
    return tsketch(S, {}, label=S.label)


def D_map(f: SkMap) -> SkMap:
    comp = {s: dict(f.comp[s]) for s in CSK.sorts}
    comp["Term"] = {}
    return make_map(D(f.src), D(f.tgt), comp, f.label)


def _point(n: int) -> SketchObject:
    return tsketch(csketch(("0",), {}), {f"t{k}": "0" for k in range(1, n + 1)})


def _tob_maps() -> list:
    from .catsketch import sketch_of_category
    from ..category import free_iso
    out = [GenMap(f"D({g.name})", D_map(g.map), f"D({g.provenance})") for g in _cat_maps()]
    T2, T1 = _point(2), _point(1)
    out.append(GenMap(TERM_INJ, make_map(T2, T1, {"V": {"0": "0"}, "Term": {"t1": "t1", "t2": "t1"}}),
                      "text"))
    empty = make_object(TSK, {}, {})
    out.append(GenMap(TERM_NONEMPTY, make_map(empty, T1, {}), "text"))
    X = tsketch(csketch(("0", "1"), {}), {"τ": "1"})
    Y = tsketch(csketch(("0", "1"), {"f": ("0", "1")}), {"τ": "1"})
    out.append(GenMap(TERM_EX, inclusion(X, Y), "figure"))
    X = tsketch(csketch(("0", "1"), {"a": ("0", "1"), "b": ("0", "1")}), {"τ": "1"})
    Y = tsketch(csketch(("0", "1"), {"f": ("0", "1")}), {"τ": "1"})
    out.append(GenMap(TERM_UNIQ, make_map(X, Y, {"V": {"0": "0", "1": "1"},
                                                 "E": {"a": "f", "b": "f"}, "Term": {"τ": "τ"}}),
                      "figure"))
    base = sketch_of_category(free_iso())
    X = tsketch(base, {"τ1": "1"})
    Y = tsketch(base, {"τ0": "0", "τ1": "1"})
    out.append(GenMap(TERM_REPLETE, inclusion(X, Y), "figure"))
    return out


_CACHE: dict = {}


def doctrine(name: str) -> DoctrineSpec:
    """``cat`` (11 maps in C-Sk) or ``tob`` (DJ plus 5 maps in T-Sk)."""
    if name not in _CACHE:
        if name == "cat":
            _CACHE[name] = DoctrineSpec("cat", CSK, tuple(_cat_maps()))
        elif name == "tob":
            _CACHE[name] = DoctrineSpec("tob", TSK, tuple(_tob_maps()))
        else:
            raise ValueError(f"unknown doctrine {name!r}")
    return _CACHE[name]


# ---------------------------------------------------------------------------
# injectivity


@dataclass(frozen=True)
class InjectivityResult:
    ok: bool
    failing_map: str | None = None
    witness: SkMap | None = None
    checked: int = 0

    def __bool__(self):
        return self.ok


def unfilled_problems(A: SketchObject, j: SkMap, counter: NodeCounter | None = None):
    """Yield every φ: X → A that does not extend along j."""
    for phi in iter_homs(j.src, A, counter=counter):
        if find_extension(j, phi) is None:
            yield phi


def is_injective(A: SketchObject, j, name: str = "") -> InjectivityResult:
    """Does every morphism X → A extend along j: X → Y?  Accepts a GenMap or SkMap."""
    if isinstance(j, GenMap):
        name, j = j.name, j.map
    n, phi = first_unfilled(j, A)
    if phi is not None:
        return InjectivityResult(False, name, phi, n)
    return InjectivityResult(True, None, None, n)


def is_injective_all(A: SketchObject, D: DoctrineSpec) -> InjectivityResult:
    total = 0
    for g in D.J:
        r = is_injective(A, g)
        total += r.checked
        if not r.ok:
            return InjectivityResult(False, r.failing_map, r.witness, total)
    return InjectivityResult(True, None, None, total)
