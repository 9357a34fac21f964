"""Explicit finite categories, functors and natural transformations.

Everything is index based: objects and morphisms are numbered 0..n-1, and the
composition table maps a composable pair ``(g, f)`` (meaning ``g∘f``) to an
index.  Names are kept only for display and file I/O.  Constructions that
build categories out of structured data (limits, sketches, words) keep the
structured *keys* alongside, so callers can translate back and forth.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .budget import check_size
from .errors import (AssociativityViolation, FunctorError, IdentityViolation,
                     MalformedTable, NaturalityError, NonComposablePair,
                     NotParallel)


def render(key) -> str:
    """Canonical display string for a structured key."""
    if isinstance(key, str):
        return key
    if isinstance(key, tuple):
        return "(" + ",".join(render(k) for k in key) + ")"
    if isinstance(key, frozenset):
        return "{" + ",".join(sorted(render(k) for k in key)) + "}"
    return str(key)


@dataclass(frozen=True, eq=False)
class FinCategory:
    objects: tuple
    morphisms: tuple
    src: tuple
    tgt: tuple
    identities: tuple
    table: Mapping = field(repr=False)
    okeys: tuple | None = field(default=None, repr=False)
    mkeys: tuple | None = field(default=None, repr=False)
    label: str = ""

    def __post_init__(self):
        homs: dict = {}
        for m, (s, t) in enumerate(zip(self.src, self.tgt)):
            homs.setdefault((s, t), []).append(m)
        object.__setattr__(self, "_homs", {k: tuple(v) for k, v in homs.items()})
        object.__setattr__(self, "_inv", None)
        object.__setattr__(self, "_oidx", None)
        object.__setattr__(self, "_midx", None)

    # basic shape ---------------------------------------------------------
    @property
    def n_obj(self) -> int:
        return len(self.objects)

    @property
    def n_mor(self) -> int:
        return len(self.morphisms)

    def id(self, a: int) -> int:
        return self.identities[a]

    def is_identity(self, m: int) -> bool:
        return self.identities[self.src[m]] == m

    def hom(self, a: int, b: int) -> tuple:
        return self._homs.get((a, b), ())

    def compose(self, g: int, f: int) -> int:
        """``g∘f``; raises on a non-composable pair."""
        try:
            return self.table[(g, f)]
        except KeyError:
            raise NonComposablePair(self.morphisms[g], self.morphisms[f]) from None

    def chain(self, *ms: int) -> int:
        """Compose right to left: ``chain(h, g, f) = h∘g∘f``."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def non_identities(self) -> list:
        return [m for m in range(self.n_mor) if not self.is_identity(m)]

    # isomorphisms ----------------------------------------------------------
    def _inverses(self) -> dict:
        if self._inv is None:
            inv = {}
            for m in range(self.n_mor):
                s, t = self.src[m], self.tgt[m]
                for k in self.hom(t, s):
                    if self.table[(k, m)] == self.identities[s] and \
                            self.table[(m, k)] == self.identities[t]:
                        inv[m] = k
                        break
            object.__setattr__(self, "_inv", inv)
        return self._inv

    def is_iso(self, m: int) -> bool:
        return m in self._inverses()

    def inverse(self, m: int) -> int:
        return self._inverses()[m]

    def isos(self, a: int, b: int) -> list:
        return [m for m in self.hom(a, b) if self.is_iso(m)]

    def isos_from(self, a: int) -> list:
        return [m for m in range(self.n_mor) if self.src[m] == a and self.is_iso(m)]

    # names and keys --------------------------------------------------------
    def okey(self, i: int):
        return self.okeys[i] if self.okeys is not None else self.objects[i]

    def mkey(self, i: int):
        return self.mkeys[i] if self.mkeys is not None else self.morphisms[i]

    def oindex(self, key) -> int:
        if self._oidx is None:
            keys = self.okeys if self.okeys is not None else self.objects
            object.__setattr__(self, "_oidx", {k: i for i, k in enumerate(keys)})
        return self._oidx[key]

    def mindex(self, key) -> int:
        if self._midx is None:
            keys = self.mkeys if self.mkeys is not None else self.morphisms
            object.__setattr__(self, "_midx", {k: i for i, k in enumerate(keys)})
        return self._midx[key]

    def obj(self, name: str) -> int:
        return self.objects.index(name)

    def mor(self, name: str) -> int:
        return self.morphisms.index(name)

    # structural equality (names ignored) ----------------------------------
    def _signature(self):
        return (self.n_obj, self.src, self.tgt, self.identities,
                frozenset(self.table.items()))

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self is other or self._signature() == other._signature()

    def __hash__(self):
        return hash((self.n_obj, self.src, self.tgt, self.identities))

    def __repr__(self):
        tag = f"{self.label}: " if self.label else ""
        return f"<FinCategory {tag}{self.n_obj} objects, {self.n_mor} morphisms>"

    def to_raw(self) -> dict:
        return {
            "objects": list(self.objects),
            "morphisms": [{"id": m, "src": self.objects[s], "tgt": self.objects[t]}
                          for m, s, t in zip(self.morphisms, self.src, self.tgt)],
            "identities": {self.objects[a]: self.morphisms[i]
                           for a, i in enumerate(self.identities)},
            "compose": [[self.morphisms[g], self.morphisms[f], self.morphisms[h]]
                        for (g, f), h in sorted(self.table.items())],
        }


# ---------------------------------------------------------------------------
# validation


def validate_category(objects: Sequence[str], morphisms: Sequence, identities: Mapping,
                      compose: Iterable, label: str = "") -> FinCategory:
    """Check raw tables and return a validated category.

    ``morphisms`` is a sequence of ``(id, src, tgt)`` triples (or dicts with
    those keys), ``identities`` maps object names to morphism ids and
    ``compose`` is an iterable of ``(g, f, g∘f)`` name triples.
    """
    objects = tuple(objects)
    if len(set(objects)) != len(objects):
        raise MalformedTable("duplicate object names")
    oidx = {o: i for i, o in enumerate(objects)}
    names, src, tgt = [], [], []
    for m in morphisms:
        if isinstance(m, Mapping):
            m = (m["id"], m["src"], m["tgt"])
        name, s, t = m
        if s not in oidx or t not in oidx:
            raise MalformedTable(f"morphism {name} has unknown endpoint")
        names.append(name)
        src.append(oidx[s])
        tgt.append(oidx[t])
    if len(set(names)) != len(names):
        raise MalformedTable("duplicate morphism names")
    midx = {m: i for i, m in enumerate(names)}
    if set(identities) != set(objects):
        raise MalformedTable("identities must be given for exactly the objects")
    ident = []
    for a in objects:
        i = identities[a]
        if i not in midx:
            raise MalformedTable(f"identity of {a} is unknown morphism {i}")
        ident.append(midx[i])
    table: dict = {}
    for entry in compose:
        g, f, h = entry
        for x in (g, f, h):
            if x not in midx:
                raise MalformedTable(f"compose entry mentions unknown morphism {x}")
        gi, fi, hi = midx[g], midx[f], midx[h]
        if src[gi] != tgt[fi]:
            raise NonComposablePair(g, f)
        if src[hi] != src[fi] or tgt[hi] != tgt[gi]:
            raise NonComposablePair(g, f, f"result {h} has the wrong endpoints")
        if (gi, fi) in table and table[(gi, fi)] != hi:
            raise NonComposablePair(g, f, "given two different results")
        table[(gi, fi)] = hi
    return _check_laws(objects, tuple(names), tuple(src), tuple(tgt), tuple(ident),
                       table, label=label)


def _check_laws(objects, names, src, tgt, ident, table, label="", okeys=None,
                mkeys=None) -> FinCategory:
    n = len(names)
    by_src: dict = {}
    for m in range(n):
        by_src.setdefault(src[m], []).append(m)
    for f in range(n):
        for g in by_src.get(tgt[f], ()):
            if (g, f) not in table:
                raise NonComposablePair(names[g], names[f], "missing from the table")
    for a, i in enumerate(ident):
        if src[i] != a or tgt[i] != a:
            raise IdentityViolation(names[i], f"not an endomorphism of {objects[a]}")
    for f in range(n):
        if table[(ident[tgt[f]], f)] != f:
            raise IdentityViolation(names[f], "id∘f ≠ f")
        if table[(f, ident[src[f]])] != f:
            raise IdentityViolation(names[f], "f∘id ≠ f")
    for f in range(n):
        for g in by_src.get(tgt[f], ()):
            gf = table[(g, f)]
            for h in by_src.get(tgt[g], ()):
                left = table[(table[(h, g)], f)]
                right = table[(h, gf)]
                if left != right:
                    raise AssociativityViolation(names[h], names[g], names[f],
                                                 names[left], names[right])
    return FinCategory(tuple(objects), names, src, tgt, ident, table,
                       okeys=okeys, mkeys=mkeys, label=label)


def category_from_raw(raw: Mapping, label: str = "") -> FinCategory:
    return validate_category(raw["objects"], raw["morphisms"], raw["identities"],
                             raw["compose"], label=label or raw.get("name", ""))


def build_category(obj_keys: Sequence[Hashable], mor_keys: Sequence[Hashable],
                   src_of: Callable, tgt_of: Callable, identity_of: Callable,
                   compose_of: Callable, label: str = "", check: bool = True,
                   oname: Callable = render, mname: Callable = render) -> FinCategory:
    """Assemble a category from structured keys.

    ``src_of``/``tgt_of`` map a morphism key to object keys, ``identity_of``
    maps an object key to a morphism key and ``compose_of(g, f)`` returns the
    key of ``g∘f``.  With ``check`` the category laws are re-verified.
    """
    obj_keys = tuple(obj_keys)
    mor_keys = tuple(mor_keys)
    check_size(label or "category", len(obj_keys), len(mor_keys))
    oidx = {k: i for i, k in enumerate(obj_keys)}
    midx = {k: i for i, k in enumerate(mor_keys)}
    src = tuple(oidx[src_of(m)] for m in mor_keys)
    tgt = tuple(oidx[tgt_of(m)] for m in mor_keys)
    ident = tuple(midx[identity_of(o)] for o in obj_keys)
    by_src: dict = {}
    for i in range(len(mor_keys)):
        by_src.setdefault(src[i], []).append(i)
    table = {}
    for fi, f in enumerate(mor_keys):
        for gi in by_src.get(tgt[fi], ()):
            table[(gi, fi)] = midx[compose_of(mor_keys[gi], f)]
    objects = tuple(oname(k) for k in obj_keys)
    names = tuple(mname(k) for k in mor_keys)
    if len(set(objects)) != len(objects):
        objects = tuple(f"{o}#{i}" for i, o in enumerate(objects))
    if len(set(names)) != len(names):
        names = tuple(f"{m}#{i}" for i, m in enumerate(names))
    if check:
        return _check_laws(objects, names, src, tgt, ident, table, label=label,
                           okeys=obj_keys, mkeys=mor_keys)
    return FinCategory(objects, names, src, tgt, ident, table, okeys=obj_keys,
                       mkeys=mor_keys, label=label)


# ---------------------------------------------------------------------------
# standard small categories


def empty_category() -> FinCategory:
    return FinCategory((), (), (), (), (), {}, label="∅")


def terminal_category() -> FinCategory:
    return FinCategory(("*",), ("id_*",), (0,), (0,), (0,), {(0, 0): 0}, label="1")


def discrete_category(n_or_names) -> FinCategory:
    names = [str(i) for i in range(n_or_names)] if isinstance(n_or_names, int) \
        else list(n_or_names)
    return FinCategory(tuple(names), tuple(f"id_{a}" for a in names),
                       tuple(range(len(names))), tuple(range(len(names))),
                       tuple(range(len(names))),
                       {(i, i): i for i in range(len(names))},
                       label=f"disc{len(names)}")


def poset_category(elements: Sequence, leq: Callable, label: str = "") -> FinCategory:
    """Thin category of a finite preorder; morphisms are pairs ``(x, y)`` with x ≤ y."""
    elements = list(elements)
    mors = [(x, y) for x in elements for y in elements if leq(x, y)]
    return build_category(elements, mors, lambda m: m[0], lambda m: m[1],
                          lambda o: (o, o), lambda g, f: (f[0], g[1]),
                          label=label or "poset",
                          mname=lambda m: f"{render(m[0])}≤{render(m[1])}")


def ordinal(n: int) -> FinCategory:
    """The ordinal [n-1] = {0 < 1 < ... < n-1}; ``ordinal(2)`` is the walking arrow."""
    c = poset_category([str(i) for i in range(n)], lambda x, y: int(x) <= int(y),
                       label=f"[{n}]")
    return c


def arrow_category() -> FinCategory:
    """The walking arrow 𝟐 = {0 → 1}."""
    return FinCategory(("0", "1"), ("id0", "id1", "u"), (0, 1, 0), (0, 1, 1), (0, 1),
                       {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2}, label="2")


def free_iso() -> FinCategory:
    """The free-living isomorphism I = {0 ≅ 1}."""
    table = {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2, (3, 1): 3, (0, 3): 3,
             (3, 2): 0, (2, 3): 1}
    return FinCategory(("0", "1"), ("id0", "id1", "i", "i⁻¹"), (0, 1, 0, 1),
                       (0, 1, 1, 0), (0, 1), table, label="I")


def monoid_category(elements: Sequence[str], mult: Callable, unit: str,
                    label: str = "") -> FinCategory:
    """One-object category of a finite monoid; ``mult(g, f)`` is g∘f."""
    elements = list(elements)
    return build_category(["*"], elements, lambda m: "*", lambda m: "*",
                          lambda o: unit, mult, label=label or "monoid")


def parallel_pair() -> FinCategory:
    """Two parallel arrows 0 ⇉ 1."""
    table = {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2, (3, 0): 3, (1, 3): 3}
    return FinCategory(("0", "1"), ("id0", "id1", "a", "b"), (0, 1, 0, 0), (0, 1, 1, 1),
                       (0, 1), table, label="⇉")


def opposite(C: FinCategory) -> FinCategory:
    table = {(f, g): h for (g, f), h in C.table.items()}
    return FinCategory(C.objects, C.morphisms, C.tgt, C.src, C.identities, table,
                       okeys=C.okeys, mkeys=C.mkeys, label=f"{C.label}ᵒᵖ")


def product_category(A: FinCategory, B: FinCategory) -> FinCategory:
    objs = [(a, b) for a in range(A.n_obj) for b in range(B.n_obj)]
    mors = [(f, g) for f in range(A.n_mor) for g in range(B.n_mor)]
    return build_category(
        objs, mors,
        lambda m: (A.src[m[0]], B.src[m[1]]), lambda m: (A.tgt[m[0]], B.tgt[m[1]]),
        lambda o: (A.id(o[0]), B.id(o[1])),
        lambda g, f: (A.compose(g[0], f[0]), B.compose(g[1], f[1])),
        label=f"{A.label}×{B.label}", check=False,
        oname=lambda o: f"({A.objects[o[0]]},{B.objects[o[1]]})",
        mname=lambda m: f"({A.morphisms[m[0]]},{B.morphisms[m[1]]})")


# ---------------------------------------------------------------------------
# functors


@dataclass(frozen=True)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    omap: tuple
    mmap: tuple
    label: str = field(default="", compare=False)

    def __call__(self, m: int) -> int:
        return self.mmap[m]

    def ob(self, a: int) -> int:
        return self.omap[a]

    def __repr__(self):
        om = ",".join(self.target.objects[b] for b in self.omap)
        return f"<FinFunctor {self.label or ''} [{om}]>"

    def to_raw(self) -> dict:
        A, B = self.source, self.target
        return {"object_map": {A.objects[a]: B.objects[b] for a, b in enumerate(self.omap)},
                "morphism_map": {A.morphisms[m]: B.morphisms[n]
                                 for m, n in enumerate(self.mmap)}}


def functor_violation(A: FinCategory, B: FinCategory, omap, mmap) -> str | None:
    """Return a description of the first broken functor law, or None."""
    if len(omap) != A.n_obj or len(mmap) != A.n_mor:
        return "maps have the wrong length"
    for m in range(A.n_mor):
        n = mmap[m]
        if B.src[n] != omap[A.src[m]] or B.tgt[n] != omap[A.tgt[m]]:
            return f"{A.morphisms[m]} is sent to a morphism with wrong endpoints"
    for a in range(A.n_obj):
        if mmap[A.id(a)] != B.id(omap[a]):
            return f"identity of {A.objects[a]} not preserved"
    for (g, f), h in A.table.items():
        if B.compose(mmap[g], mmap[f]) != mmap[h]:
            return f"composite {A.morphisms[g]}∘{A.morphisms[f]} not preserved"
    return None


def make_functor(A: FinCategory, B: FinCategory, omap, mmap, label: str = "",
                 check: bool = True) -> FinFunctor:
    omap, mmap = tuple(omap), tuple(mmap)
    if check:
        bad = functor_violation(A, B, omap, mmap)
        if bad:
            raise FunctorError(bad)
    return FinFunctor(A, B, omap, mmap, label)


def functor_from_names(A: FinCategory, B: FinCategory, object_map: Mapping,
                       morphism_map: Mapping | None = None, label: str = "") -> FinFunctor:
    """Build a functor from name maps; identities may be omitted from ``morphism_map``."""
    omap = [B.obj(object_map[a]) for a in A.objects]
    morphism_map = dict(morphism_map or {})
    mmap = []
    for m, name in enumerate(A.morphisms):
        if name in morphism_map:
            mmap.append(B.mor(morphism_map[name]))
        elif A.is_identity(m):
            mmap.append(B.id(omap[A.src[m]]))
        else:
            raise FunctorError(f"no image given for {name}")
    return make_functor(A, B, omap, mmap, label)


def identity_functor(A: FinCategory) -> FinFunctor:
    return FinFunctor(A, A, tuple(range(A.n_obj)), tuple(range(A.n_mor)), "1")


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    """G∘F."""
    if F.target != G.source:
        raise FunctorError("functors are not composable")
    return FinFunctor(F.source, G.target, tuple(G.omap[x] for x in F.omap),
                      tuple(G.mmap[x] for x in F.mmap))


def constant_functor(A: FinCategory, B: FinCategory, b: int) -> FinFunctor:
    return FinFunctor(A, B, (b,) * A.n_obj, (B.id(b),) * A.n_mor)


def point(B: FinCategory, b: int) -> FinFunctor:
    """The functor 1 → B selecting ``b``."""
    return FinFunctor(terminal_category(), B, (b,), (B.id(b),), B.objects[b])


def empty_functor(B: FinCategory) -> FinFunctor:
    return FinFunctor(empty_category(), B, (), ())


def to_terminal(A: FinCategory) -> FinFunctor:
    return FinFunctor(A, terminal_category(), (0,) * A.n_obj, (0,) * A.n_mor)


def pair_functor(F: FinFunctor, G: FinFunctor, AxB: FinCategory | None = None) -> FinFunctor:
    """⟨F, G⟩: X → A×B."""
    if F.source != G.source:
        raise FunctorError("pairing needs a common source")
    P = AxB or product_category(F.target, G.target)
    return FinFunctor(F.source, P,
                      tuple(P.oindex((F.omap[x], G.omap[x])) for x in range(F.source.n_obj)),
                      tuple(P.mindex((F.mmap[m], G.mmap[m])) for m in range(F.source.n_mor)))


def projection(P: FinCategory, i: int, target: FinCategory) -> FinFunctor:
    """Projection out of a category whose keys are tuples of indices."""
    return FinFunctor(P, target, tuple(P.okey(x)[i] for x in range(P.n_obj)),
                      tuple(P.mkey(m)[i] for m in range(P.n_mor)))


def is_injective_on_objects(F: FinFunctor) -> bool:
    return len(set(F.omap)) == len(F.omap)


# ---------------------------------------------------------------------------
# natural transformations


@dataclass(frozen=True)
class NatTransf:
    source: FinFunctor
    target: FinFunctor
    components: tuple
    label: str = field(default="", compare=False)

    def __getitem__(self, a: int) -> int:
        return self.components[a]

    @property
    def dom(self) -> FinCategory:
        return self.source.source

    @property
    def cod(self) -> FinCategory:
        return self.source.target

    def is_invertible(self) -> bool:
        return all(self.cod.is_iso(c) for c in self.components)

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            self.cod.is_identity(c) for c in self.components)


def naturality_violation(F: FinFunctor, G: FinFunctor, comps) -> str | None:
    A, B = F.source, F.target
    if len(comps) != A.n_obj:
        return "wrong number of components"
    for a in range(A.n_obj):
        c = comps[a]
        if B.src[c] != F.omap[a] or B.tgt[c] != G.omap[a]:
            return f"component at {A.objects[a]} has wrong endpoints"
    for m in range(A.n_mor):
        s, t = A.src[m], A.tgt[m]
        if B.compose(G.mmap[m], comps[s]) != B.compose(comps[t], F.mmap[m]):
            return f"square at {A.morphisms[m]} does not commute"
    return None


def _check_parallel(F: FinFunctor, G: FinFunctor) -> None:
    if F.source != G.source or F.target != G.target:
        raise NotParallel("functors are not parallel")


def make_nat(F: FinFunctor, G: FinFunctor, comps, label: str = "",
             check: bool = True) -> NatTransf:
    _check_parallel(F, G)
    comps = tuple(comps)
    if check:
        bad = naturality_violation(F, G, comps)
        if bad:
            raise NaturalityError(bad)
    return NatTransf(F, G, comps, label)


def identity_nat(F: FinFunctor) -> NatTransf:
    B = F.target
    return NatTransf(F, F, tuple(B.id(b) for b in F.omap))


def vcompose(beta: NatTransf, alpha: NatTransf) -> NatTransf:
    """β·α, first α then β."""
    if alpha.target != beta.source:
        raise NaturalityError("2-cells are not vertically composable")
    B = alpha.cod
    return NatTransf(alpha.source, beta.target,
                     tuple(B.compose(b, a) for a, b in zip(alpha.components, beta.components)))


def inverse_nat(alpha: NatTransf) -> NatTransf:
    B = alpha.cod
    return NatTransf(alpha.target, alpha.source, tuple(B.inverse(c) for c in alpha.components))


def whisker_left(alpha: NatTransf, H: FinFunctor) -> NatTransf:
    """α H: components α_{H x}."""
    return NatTransf(compose_functors(alpha.source, H), compose_functors(alpha.target, H),
                     tuple(alpha.components[H.omap[x]] for x in range(H.source.n_obj)))


def whisker_right(K: FinFunctor, alpha: NatTransf) -> NatTransf:
    """K α: components K(α_x)."""
    return NatTransf(compose_functors(K, alpha.source), compose_functors(K, alpha.target),
                     tuple(K.mmap[c] for c in alpha.components))


def hcompose(beta: NatTransf, alpha: NatTransf) -> NatTransf:
    """Horizontal composite β∗α for α: F ⇒ G: A → B and β: H ⇒ K: B → C."""
    return vcompose(whisker_left(beta, alpha.target), whisker_right(beta.source, alpha))


def nat_from_names(F: FinFunctor, G: FinFunctor, comps: Mapping) -> NatTransf:
    A, B = F.source, F.target
    return make_nat(F, G, [B.mor(comps[a]) for a in A.objects])
