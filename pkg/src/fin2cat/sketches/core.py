"""Iterated slash categories C//X over finite sets, in flattened form.

An object of an iterated slash category is stored as a presheaf-like table:
every *sort* (one per marker, plus the base sort ``V`` of finite sets) holds a
tuple of element names, and every element of a marker sort records its
*faces*: where each element of the marker object is sent by the marking
function a_X.  The nested view (base object plus marking functions) is
recovered by :meth:`SketchObject.base` and :meth:`SketchObject.markings`.

Because each level is a presheaf category, colimits are computed sortwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from ..budget import NodeCounter
from ..errors import Fin2CatError


class SketchError(Fin2CatError):
    pass


@dataclass(frozen=True, eq=False)
class SketchCategory:
    """A finite sketch category: FinSet with finitely many slash steps.

    ``markers`` maps each marker sort to its marker object, an object of the
    previous level; ``parent`` is the previous level (None for FinSet).
    """
    name: str
    sorts: tuple
    markers: Mapping
    parent: "SketchCategory | None" = None
    slots: Mapping = field(default_factory=dict, repr=False)

    def __post_init__(self):
        slots = {}
        for s in self.sorts:
            X = self.markers.get(s)
            slots[s] = () if X is None else tuple(
                (t, e) for t in X.cat.sorts for e in X.elems[t])
        object.__setattr__(self, "slots", slots)

    def marker_sorts(self) -> tuple:
        return tuple(s for s in self.sorts if s in self.markers)

    def own_markers(self) -> tuple:
        if self.parent is None:
            return self.marker_sorts()
        return tuple(s for s in self.sorts if s not in self.parent.sorts)

    # ComputableCategory interface -----------------------------------------
    def make(self, elems: Mapping, faces: Mapping | None = None) -> "SketchObject":
        return make_object(self, elems, faces or {})

    def empty(self) -> "SketchObject":
        return self.make({})

    def enumerate_hom(self, A, B, fixed=None) -> list:
        return list(iter_homs(A, B, fixed))

    def identity(self, A) -> "SkMap":
        return identity_map(A)

    def compose(self, g, f) -> "SkMap":
        return compose_maps(g, f)

    def pushout(self, j, phi):
        return pushout(j, phi)

    def coproduct(self, A, B):
        return coproduct(A, B)

    def is_finite(self, A) -> bool:
        return True

    def __repr__(self):
        return f"<SketchCategory {self.name}: sorts {','.join(self.sorts)}>"


FINSET = SketchCategory("FinSet", ("V",), {})


def slash_construction(C: SketchCategory, markers: Mapping, name: str = "") -> SketchCategory:
    """X//C: objects are C-objects with a marking set and function per marker."""
    for s, X in markers.items():
        if s in C.sorts:
            raise SketchError(f"marker sort {s} clashes with an existing sort")
        if X.cat is not C:
            raise SketchError(f"marker {s} is not an object of {C.name}")
    allm = dict(C.markers)
    allm.update(markers)
    return SketchCategory(name or f"{{{','.join(markers)}}}//{C.name}",
                          C.sorts + tuple(markers), allm, C)


@dataclass(frozen=True, eq=False)
class SketchObject:
    cat: SketchCategory
    elems: Mapping          # sort -> tuple of element names
    faces: Mapping          # sort -> {element: tuple of face values, aligned with slots}
    label: str = ""

    def size(self) -> int:
        return sum(len(v) for v in self.elems.values())

    def face(self, sort: str, x) -> dict:
        return dict(zip(self.cat.slots[sort], self.faces[sort][x]))

    def base(self) -> "SketchObject":
        """Forget this level's own markings."""
        P = self.cat.parent
        if P is None:
            raise SketchError("FinSet objects have no base")
        return SketchObject(P, {s: self.elems[s] for s in P.sorts},
                            {s: self.faces[s] for s in P.sorts})

    def markings(self) -> dict:
        """marker sort -> {mark: hom (as sort -> {marker element: element})}."""
        out = {}
        for s in self.cat.own_markers():
            X = self.cat.markers[s]
            out[s] = {}
            for x in self.elems[s]:
                hom = {t: {} for t in X.cat.sorts}
                for (t, e), v in zip(self.cat.slots[s], self.faces[s][x]):
                    hom[t][e] = v
                out[s][x] = hom
        return out

    def key(self):
        return tuple((s, self.elems[s], tuple(self.faces[s][x] for x in self.elems[s]))
                     for s in self.cat.sorts)

    def __eq__(self, other):
        return isinstance(other, SketchObject) and self.cat is other.cat and \
            self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        parts = ", ".join(f"{s}:{len(self.elems[s])}" for s in self.cat.sorts)
        return f"<SketchObject {self.label or self.cat.name} {parts}>"


def make_object(cat: SketchCategory, elems: Mapping, faces: Mapping, label: str = "",
                check: bool = True) -> SketchObject:
    el = {s: tuple(elems.get(s, ())) for s in cat.sorts}
    fc = {}
    for s in cat.sorts:
        n = len(cat.slots[s])
        fs = faces.get(s, {})
        fc[s] = {x: tuple(fs[x]) if n else () for x in el[s]}
    A = SketchObject(cat, el, fc, label)
    if check:
        validate_object(A)
    return A


def validate_object(A: SketchObject) -> None:
    """Each element's faces must form a genuine hom out of its marker."""
    cat = A.cat
    sets = {s: set(A.elems[s]) for s in cat.sorts}
    for s in cat.sorts:
        if len(sets[s]) != len(A.elems[s]):
            raise SketchError(f"duplicate elements in sort {s}")
    for s in cat.marker_sorts():
        X = cat.markers[s]
        for x in A.elems[s]:
            fx = A.faces[s][x]
            if len(fx) != len(cat.slots[s]):
                raise SketchError(f"{s}-element {x} has {len(fx)} faces")
            img = dict(zip(cat.slots[s], fx))
            for (t, e), v in img.items():
                if v not in sets[t]:
                    raise SketchError(f"{s}-element {x} has unknown face {v}")
                if t in X.cat.markers:
                    want = tuple(img[(u, w)] for (u, _), w in
                                 zip(cat.slots[t], X.faces[t][e]))
                    if A.faces[t][v] != want:
                        raise SketchError(f"{s}-element {x} is not a hom at {e}")


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=False)
class SkMap:
    src: SketchObject
    tgt: SketchObject
    comp: Mapping   # sort -> {element: element}
    label: str = ""

    def __call__(self, sort, x):
        return self.comp[sort][x]

    def key(self):
        return tuple((s, tuple(self.comp[s][x] for x in self.src.elems[s]))
                     for s in self.src.cat.sorts)

    def __eq__(self, other):
        return isinstance(other, SkMap) and self.src == other.src and \
            self.tgt == other.tgt and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_mono(self) -> bool:
        return all(len(set(self.comp[s].values())) == len(self.comp[s])
                   for s in self.src.cat.sorts)

    def is_epi(self) -> bool:
        return all(set(self.comp[s].values()) == set(self.tgt.elems[s])
                   for s in self.src.cat.sorts)

    def __repr__(self):
        return f"<SkMap {self.label} {self.src!r} → {self.tgt!r}>"


def map_violation(f: SkMap) -> str | None:
    A, B = f.src, f.tgt
    for s in A.cat.sorts:
        for x in A.elems[s]:
            y = f.comp[s].get(x)
            if y is None or y not in B.faces[s]:
                return f"{s}-element {x} has no valid image"
            want = tuple(f.comp[t][v] for (t, _), v in zip(A.cat.slots[s], A.faces[s][x]))
            if B.faces[s][y] != want:
                return f"faces of {s}-element {x} are not preserved"
    return None


def make_map(A: SketchObject, B: SketchObject, comp: Mapping, label: str = "",
             check: bool = True) -> SkMap:
    c = {s: dict(comp.get(s, {})) for s in A.cat.sorts}
    f = SkMap(A, B, c, label)
    if check:
        bad = map_violation(f)
        if bad:
            raise SketchError(f"not a sketch morphism: {bad}")
    return f


def identity_map(A: SketchObject) -> SkMap:
    return SkMap(A, A, {s: {x: x for x in A.elems[s]} for s in A.cat.sorts})


def compose_maps(g: SkMap, f: SkMap) -> SkMap:
    return SkMap(f.src, g.tgt, {s: {x: g.comp[s][y] for x, y in f.comp[s].items()}
                                for s in f.src.cat.sorts})


def inclusion(A: SketchObject, B: SketchObject, label: str = "") -> SkMap:
    return make_map(A, B, {s: {x: x for x in A.elems[s]} for s in A.cat.sorts}, label)


# ---------------------------------------------------------------------------
# hom enumeration and extension search


def _face_index(B: SketchObject) -> dict:
    """sort -> slot position -> face value -> elements having that face."""
    idx = getattr(B, "_face_idx", None)
    if idx is None:
        idx = {}
        for s in B.cat.sorts:
            per = [dict() for _ in B.cat.slots[s]]
            for y in B.elems[s]:
                for i, w in enumerate(B.faces[s][y]):
                    per[i].setdefault(w, []).append(y)
            idx[s] = per
        object.__setattr__(B, "_face_idx", idx)
    return idx


class _Plan:
    """A static search order for homs out of X, given a face-closed preset.

    Elements are numbered; each step places one element of X and either sets
    or checks the images of its faces.  Because the slots of a sort list every
    element of its marker (faces of faces included), which faces are already
    placed at each step is known in advance, so the search needs no undo.
    """

    __slots__ = ("ids", "steps", "size")

    def __init__(self, X: SketchObject, preset: frozenset):
        cat = X.cat
        ids = {}
        for s in cat.sorts:
            for x in X.elems[s]:
                ids[(s, x)] = len(ids)
        covered = set(preset)
        steps = []
        for s in reversed(cat.sorts):
            for x in X.elems[s]:
                xid = ids[(s, x)]
                if xid in covered:
                    continue
                before = set(covered)
                covered.add(xid)
                ops = []
                for i, ((t, _), v) in enumerate(zip(cat.slots[s], X.faces[s][x])):
                    vid = ids[(t, v)]
                    ops.append((i, vid, vid in covered))
                    covered.add(vid)
                key = next(((i, vid) for i, vid, _ in ops if vid in before), None)
                steps.append((s, xid, tuple(ops), key))
        self.ids, self.steps, self.size = ids, tuple(steps), len(ids)

    def run(self, B: SketchObject, arr: list, counter: NodeCounter):
        """Yield ``arr`` (mutated in place) once per completion."""
        index, faces, elems, steps = _face_index(B), B.faces, B.elems, self.steps
        n = len(steps)

        def go(k):
            if k == n:
                yield arr
                return
            s, xid, ops, key = steps[k]
            fs = faces[s]
            cands = elems[s] if key is None else index[s][key[0]].get(arr[key[1]], ())
            counter.tick(len(cands) or 1)
            for y in cands:
                fy = fs[y]
                for i, vid, chk in ops:
                    if chk:
                        if arr[vid] != fy[i]:
                            break
                    else:
                        arr[vid] = fy[i]
                else:
                    arr[xid] = y
                    yield from go(k + 1)

        return go(0)


def _plan(X: SketchObject, preset: frozenset = frozenset()) -> _Plan:
    plans = getattr(X, "_plans", None)
    if plans is None:
        plans = {}
        object.__setattr__(X, "_plans", plans)
    P = plans.get(preset)
    if P is None:
        P = plans[preset] = _Plan(X, preset)
    return P


def _close_fixed(A: SketchObject, B: SketchObject, fixed: Mapping) -> dict | None:
    """Extend a partial map to the faces of its elements; None on a clash."""
    slots = A.cat.slots
    out: dict = {}
    for s in A.cat.sorts:
        for x, y in fixed.get(s, {}).items():
            if y not in B.faces[s]:
                return None
            for (t, v), w in [((s, x), y)] + [((t, v), w) for (t, _), v, w in
                                             zip(slots[s], A.faces[s][x], B.faces[s][y])]:
                if out.setdefault((t, v), w) != w:
                    return None
    return out


def _to_map(P: _Plan, A: SketchObject, B: SketchObject, arr: list) -> SkMap:
    comp = {s: {} for s in A.cat.sorts}
    for (s, x), i in P.ids.items():
        comp[s][x] = arr[i]
    return SkMap(A, B, comp)


def iter_homs(A: SketchObject, B: SketchObject, fixed: Mapping | None = None,
              counter: NodeCounter | None = None) -> Iterator[SkMap]:
    """All sketch morphisms A → B agreeing with the partial map ``fixed``.

    Elements of the highest sorts are placed first; their faces then force
    the images of lower elements, and an already-placed face narrows the
    candidates through an index on B.
    """
    counter = counter or NodeCounter("sketch hom search")
    pre = _close_fixed(A, B, fixed) if fixed else {}
    if pre is None:
        return
    ids = _plan(A).ids
    P = _plan(A, frozenset(ids[k] for k in pre))
    arr = [None] * P.size
    for k, w in pre.items():
        arr[ids[k]] = w
    for sol in P.run(B, arr, counter):
        yield _to_map(P, A, B, sol)


def _ext_plan(j: SkMap, PX: _Plan):
    cached = getattr(j, "_ext", None)
    if cached is None:
        Y = j.tgt
        ids = _plan(Y).ids
        img = tuple((PX.ids[(s, x)], ids[(s, j.comp[s][x])])
                    for s in j.src.cat.sorts for x in j.src.elems[s])
        cached = (img, _plan(Y, frozenset(y for _, y in img)))
        object.__setattr__(j, "_ext", cached)
    return cached


def _extends(j: SkMap, X_arr: list, PX: _Plan, B: SketchObject, counter) -> bool:
    """Does the map X → B held in ``X_arr`` extend along j: X → Y?"""
    img, PY = _ext_plan(j, PX)
    arr = [None] * PY.size
    for xi, yi in img:
        cur = arr[yi]
        if cur is None:
            arr[yi] = X_arr[xi]
        elif cur != X_arr[xi]:
            return False
    for _ in PY.run(B, arr, counter):
        return True
    return False


def find_extension(j: SkMap, phi: SkMap) -> SkMap | None:
    """Some ψ with ψ∘j = φ, or None."""
    fixed: dict = {s: {} for s in j.src.cat.sorts}
    for s in j.src.cat.sorts:
        for x in j.src.elems[s]:
            y, z = j.comp[s][x], phi.comp[s][x]
            if fixed[s].get(y, z) != z:
                return None
            fixed[s][y] = z
    for psi in iter_homs(j.tgt, phi.tgt, fixed):
        return psi
    return None


def first_unfilled(j: SkMap, A: SketchObject, counter: NodeCounter | None = None):
    """(number of maps X → A examined, first one not extending along j or None)."""
    counter = counter or NodeCounter("injectivity search")
    PX = _plan(j.src)
    n = 0
    for arr in PX.run(A, [None] * PX.size, counter):
        n += 1
        if not _extends(j, arr, PX, A, counter):
            return n, _to_map(PX, j.src, A, arr)
    return n, None


# ---------------------------------------------------------------------------
# colimits


class _UF:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            lo, hi = sorted((ra, rb))
            self.parent[hi] = lo


def _fresh(prefix: str, taken: set, start: int = 0):
    k = start
    while f"{prefix}{k}" in taken:
        k += 1
    return f"{prefix}{k}", k + 1


def pushout(j: SkMap, phi: SkMap, label: str = ""):
    """Pushout of ``Y ←j− X −φ→ A``; returns (P, inA: A → P, inY: Y → P).

    Elements of A keep their names (a merged class takes its least A-name);
    elements only coming from Y receive fresh names.
    """
    X, Y, A = j.src, j.tgt, phi.tgt
    cat = A.cat
    # union-find nodes: (0, a) for A, (1, y) for Y; tags order A before Y
    uf = {s: _UF() for s in cat.sorts}
    for s in cat.sorts:
        for a in A.elems[s]:
            uf[s].add((0, a))
        for y in Y.elems[s]:
            uf[s].add((1, y))
        for x in X.elems[s]:
            uf[s].union((0, phi.comp[s][x]), (1, j.comp[s][x]))
    names: dict = {}
    elems: dict = {}
    for s in cat.sorts:
        taken = set(A.elems[s])
        names[s] = {}
        classes: dict = {}
        for node in list(uf[s].parent):
            classes.setdefault(uf[s].find(node), []).append(node)
        out = []
        counter = 0
        prefix = s[0].lower() if s != "Term" else "τ"
        for root in sorted(classes, key=lambda r: (r[0], str(r[1]))):
            members = classes[root]
            a_names = sorted(m[1] for m in members if m[0] == 0)
            if a_names:
                nm = a_names[0]
            else:
                nm, counter = _fresh(prefix, taken, counter)
                taken.add(nm)
            for m in members:
                names[s][m] = nm
            out.append(nm)
        elems[s] = tuple(_sorted_names(out))
    faces: dict = {}
    for s in cat.sorts:
        faces[s] = {}
        for node, nm in names[s].items():
            src_obj = A if node[0] == 0 else Y
            fc = tuple(names[t][(node[0], v)] for (t, _), v in
                       zip(cat.slots[s], src_obj.faces[s][node[1]]))
            prev = faces[s].get(nm)
            if prev is not None and prev != fc:
                raise SketchError("pushout faces disagree (input maps are not morphisms)")
            faces[s][nm] = fc
    P = SketchObject(cat, elems, faces, label)
    inA = SkMap(A, P, {s: {a: names[s][(0, a)] for a in A.elems[s]} for s in cat.sorts})
    inY = SkMap(Y, P, {s: {y: names[s][(1, y)] for y in Y.elems[s]} for s in cat.sorts})
    return P, inA, inY


def _sorted_names(names):
    def k(n):
        head = n.rstrip("0123456789")
        tail = n[len(head):]
        return (head, int(tail) if tail else -1, n)
    return sorted(names, key=k)


def coproduct(A: SketchObject, B: SketchObject):
    """A ⊔ B with B's clashing names renamed; returns (S, inA, inB)."""
    empty = A.cat.empty()
    return pushout(SkMap(empty, B, {s: {} for s in A.cat.sorts}),
                   SkMap(empty, A, {s: {} for s in A.cat.sorts}))


def verify_pushout_sampled(j: SkMap, phi: SkMap, P, inA: SkMap, inY: SkMap, Z: SketchObject) -> bool:
    """Universal property against all cocones into the test object Z."""
    for u in iter_homs(phi.tgt, Z):
        for v in iter_homs(j.tgt, Z):
            if compose_maps(u, phi).key() != compose_maps(v, j).key():
                continue
            fac = [w for w in iter_homs(P, Z)
                   if compose_maps(w, inA).key() == u.key() and
                   compose_maps(w, inY).key() == v.key()]
            if len(fac) != 1:
                return False
    return True
