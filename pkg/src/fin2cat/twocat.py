"""Presented 2-categories, 2-functors into finite categories and pseudonaturality.

A presentation lists objects, generating 1-cells, generating 2-cells between
words of 1-cells, and relations between pasting expressions.  Words are read
diagrammatically: ``("f", "g")`` means first f, then g.  A few shapes also
identify 1-cell words (the free surjective equivalence has pq = 1); these are
kept as oriented rewrite rules.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Mapping, Sequence

from .budget import NodeCounter
from .category import (FinCategory, FinFunctor, NatTransf, compose_functors,
                       identity_functor, identity_nat, inverse_nat, naturality_violation,
                       pair_functor, vcompose, whisker_left, whisker_right)
from .classify import classify_functor, find_equivalence_inverse
from .errors import (IllTypedExpression, InternalConsistencyError, NotCloven, NotInImage,
                     NotPointwiseEquivalence)
from .limits import pseudolimit_of_arrow
from .search import iter_functors, iter_nat_transfs


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Word:
    src: str
    tgt: str
    cells: tuple = ()

    def __str__(self):
        return "·".join(self.cells) if self.cells else f"1_{self.src}"


@dataclass(frozen=True)
class Gen2:
    src: Word
    tgt: Word
    invertible: bool = False


@dataclass(frozen=True)
class Step:
    """pre · γ · post, with γ a generator (or its inverse)."""
    pre: tuple
    gen: str
    post: tuple = ()
    inverse: bool = False


@dataclass(frozen=True)
class Paste:
    src: Word
    steps: tuple = ()


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: Paste
    rhs: Paste


@dataclass(frozen=True)
class Presentation:
    name: str
    objects: tuple
    one_cells: Mapping                 # name -> (src, tgt)
    two_cells: Mapping = field(default_factory=dict)   # name -> Gen2
    relations: tuple = ()
    rules: tuple = ()                  # (cells, cells) with both sides parallel

    def word(self, src: str, *cells) -> Word:
        x = src
        for c in cells:
            if c not in self.one_cells:
                raise IllTypedExpression(f"unknown 1-cell {c}")
            s, t = self.one_cells[c]
            if s != x:
                raise IllTypedExpression(f"1-cell {c} starts at {s}, not {x}")
            x = t
        return Word(src, x, self.normalize(tuple(cells)))

    def normalize(self, cells: tuple) -> tuple:
        changed = True
        while changed and self.rules:
            changed = False
            for lhs, rhs in self.rules:
                n = len(lhs)
                for i in range(len(cells) - n + 1):
                    if cells[i:i + n] == lhs:
                        cells = cells[:i] + rhs + cells[i + n:]
                        changed = True
                        break
        return cells

    def step_type(self, cur: Word, st: Step) -> Word:
        """Target of a step applied to ``cur``; raises IllTypedExpression."""
        if st.gen not in self.two_cells:
            raise IllTypedExpression(f"unknown 2-cell {st.gen}")
        g = self.two_cells[st.gen]
        if st.inverse and not g.invertible:
            raise IllTypedExpression(f"2-cell {st.gen} is not invertible")
        a, b = (g.tgt, g.src) if st.inverse else (g.src, g.tgt)
        pre = self.word(cur.src, *st.pre)
        if pre.tgt != a.src:
            raise IllTypedExpression(f"left whisker of {st.gen} ends at {pre.tgt}")
        post = self.word(a.tgt, *st.post)
        have = self.word(cur.src, *(st.pre + a.cells + st.post))
        if have != cur:
            raise IllTypedExpression(f"{st.gen} expects {have}, found {cur}")
        return self.word(cur.src, *(st.pre + b.cells + st.post))

    def paste_type(self, p: Paste) -> Word:
        cur = self.word(p.src.src, *p.src.cells)
        for st in p.steps:
            cur = self.step_type(cur, st)
        return cur

    def check(self) -> None:
        for name, g in self.two_cells.items():
            if (g.src.src, g.src.tgt) != (g.tgt.src, g.tgt.tgt):
                raise IllTypedExpression(f"2-cell {name} has non-parallel boundary")
        for r in self.relations:
            if self.paste_type(r.lhs) != self.paste_type(r.rhs) or \
                    self.word(r.lhs.src.src, *r.lhs.src.cells) != \
                    self.word(r.rhs.src.src, *r.rhs.src.cells):
                raise IllTypedExpression(f"relation {r.name} has non-parallel sides")

    def counts(self) -> dict:
        return {"objects": len(self.objects), "one_cells": len(self.one_cells),
                "two_cells": len(self.two_cells), "relations": len(self.relations)}


def _pres(name, objects, ones, twos=None, rels=(), rules=()) -> Presentation:
    P = Presentation(name, tuple(objects), dict(ones), {}, (), tuple(rules))
    gens = {}
    for g, (x, s, t, inv) in (twos or {}).items():
        gens[g] = Gen2(P.word(x, *s), P.word(x, *t), inv)
    P = Presentation(name, P.objects, P.one_cells, gens, tuple(rels), P.rules)
    P.check()
    return P


def _adjunction(name: str, eta_inv: bool, eps_inv: bool) -> Presentation:
    # u: 0 → 1, f: 1 → 0, η: 1 ⇒ uf at 1, ε: fu ⇒ 1 at 0 (f ⊣ u)
    ones = {"u": ("0", "1"), "f": ("1", "0")}
    twos = {"η": ("1", (), ("f", "u"), eta_inv), "ε": ("0", ("u", "f"), (), eps_inv)}
    P = _pres(name, ("0", "1"), ones, twos)
    rels = (
        Relation("triangle at f", Paste(P.word("1", "f"), (Step((), "η", ("f",)),
                                                            Step(("f",), "ε", ()))),
                 Paste(P.word("1", "f"))),
        Relation("triangle at u", Paste(P.word("0", "u"), (Step(("u",), "η", ()),
                                                            Step((), "ε", ("u",)))),
                 Paste(P.word("0", "u"))),
    )
    return _pres(name, ("0", "1"), ones, twos, rels)


def two_A(A: FinCategory) -> Presentation:
    """𝟐_𝒜: objects 0, 1 with hom(0, 1) = 𝒜, presented by its generators."""
    ones = {A.objects[x]: ("0", "1") for x in range(A.n_obj)}
    twos = {A.morphisms[m]: ("0", (A.objects[A.src[m]],), (A.objects[A.tgt[m]],), False)
            for m in A.non_identities()}
    P = _pres(f"2_{A.label or 'A'}", ("0", "1"), ones, twos)
    rels = []
    for (g, f), h in sorted(A.table.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if A.is_identity(g) or A.is_identity(f):
            continue
        src = P.word("0", A.objects[A.src[f]])
        rhs = () if A.is_identity(h) else (Step((), A.morphisms[h]),)
        rels.append(Relation(f"{A.morphisms[g]}∘{A.morphisms[f]}",
                             Paste(src, (Step((), A.morphisms[f]), Step((), A.morphisms[g]))),
                             Paste(src, rhs)))
    return _pres(P.name, P.objects, ones, twos, rels)


PRESENTATIONS = ("D0", "D1", "D2", "P1", "P2", "I2", "Adj", "Ref", "Coref", "AdjEq", "RE",
                 "Two_A")


def standard_presentation(name: str, A: FinCategory | None = None) -> Presentation:
    par = {"a": ("0", "1"), "b": ("0", "1")}
    if name == "D0":
        return _pres(name, ("0",), {})
    if name == "P0":
        return _pres(name, ("0", "1"), {})
    if name == "D1":
        return _pres(name, ("0", "1"), {"a": ("0", "1")})
    if name == "P1":
        return _pres(name, ("0", "1"), par)
    if name == "D2":
        return _pres(name, ("0", "1"), par, {"α": ("0", ("a",), ("b",), False)})
    if name == "I2":
        return _pres(name, ("0", "1"), par, {"α": ("0", ("a",), ("b",), True)})
    if name == "P2":
        return _pres(name, ("0", "1"), par, {"α": ("0", ("a",), ("b",), False),
                                            "β": ("0", ("a",), ("b",), False)})
    if name == "Adj":
        return _adjunction(name, False, False)
    if name == "Ref":
        return _adjunction(name, False, True)
    if name == "Coref":
        return _adjunction(name, True, False)
    if name == "AdjEq":
        return _adjunction(name, True, True)
    if name == "RE":
        # p: 0 → 1, q: 1 → 0 with pq = 1 (q then p), η: qp ≅ 1 at 0, and pη = id
        ones = {"p": ("0", "1"), "q": ("1", "0")}
        rules = ((("q", "p"), ()),)
        twos = {"η": ("0", ("p", "q"), (), True)}
        P = _pres(name, ("0", "1"), ones, twos, (), rules)
        rel = Relation("pη = id", Paste(P.word("0", "p"), (Step((), "η", ("p",)),)),
                       Paste(P.word("0", "p")))
        return _pres(name, ("0", "1"), ones, twos, (rel,), rules)
    if name == "Two_A":
        if A is None:
            raise ValueError("Two_A needs a category")
        return two_A(A)
    raise ValueError(f"unknown presentation {name!r}")


# ---------------------------------------------------------------------------
# 2-functors into finite categories


@dataclass(frozen=True)
class TwoFunctor:
    pres: Presentation
    obj: Mapping      # object -> FinCategory
    one: Mapping      # 1-cell -> FinFunctor
    two: Mapping      # 2-cell -> NatTransf
    label: str = ""

    def word(self, w: Word) -> FinFunctor:
        F = identity_functor(self.obj[w.src])
        for c in w.cells:
            F = compose_functors(self.one[c], F)
        return F

    def cells(self, x: str, cells: Sequence) -> FinFunctor:
        F = identity_functor(self.obj[x])
        for c in cells:
            F = compose_functors(self.one[c], F)
        return F

    def step(self, cur: Word, st: Step) -> NatTransf:
        g = self.pres.two_cells[st.gen]
        a = g.tgt if st.inverse else g.src
        gamma = self.two[st.gen]
        if st.inverse:
            gamma = inverse_nat(gamma)
        Pre = self.cells(cur.src, st.pre)
        Post = self.cells(a.tgt, st.post)
        return whisker_right(Post, whisker_left(gamma, Pre))


def paste_evaluate(expr: Paste, asg: TwoFunctor) -> NatTransf:
    """Evaluate whiskered generator steps, composing vertically left to right."""
    P = asg.pres
    cur = P.word(expr.src.src, *expr.src.cells)
    out = identity_nat(asg.word(cur))
    for st in expr.steps:
        nxt = P.step_type(cur, st)
        out = vcompose(asg.step(cur, st), out)
        cur = nxt
    return out


def _same_cell(a: NatTransf, b: NatTransf) -> bool:
    return a.source == b.source and a.target == b.target and a.components == b.components


def validate_two_functor(asg: TwoFunctor) -> str | None:
    """None if the assignment is a 2-functor, else the name of what fails."""
    P = asg.pres
    for x in P.objects:
        if x not in asg.obj:
            return f"object {x} unassigned"
    for c, (s, t) in P.one_cells.items():
        F = asg.one.get(c)
        if F is None or F.source != asg.obj[s] or F.target != asg.obj[t]:
            return f"1-cell {c} is ill-typed"
    for lhs, rhs in P.rules:
        x = P.one_cells[lhs[0]][0] if lhs else P.one_cells[rhs[0]][0]
        if asg.cells(x, lhs) != asg.cells(x, rhs):
            return f"1-cell identity {'·'.join(lhs)} = {'·'.join(rhs) or '1'}"
    for g, gen in P.two_cells.items():
        a = asg.two.get(g)
        if a is None or a.source != asg.word(gen.src) or a.target != asg.word(gen.tgt):
            return f"2-cell {g} is ill-typed"
        if gen.invertible and not a.is_invertible():
            return f"2-cell {g} is not invertible"
    for r in P.relations:
        if not _same_cell(paste_evaluate(r.lhs, asg), paste_evaluate(r.rhs, asg)):
            return r.name
    return None


# ---------------------------------------------------------------------------
# pseudonatural transformations and modifications


@dataclass(frozen=True)
class PseudoNat:
    """θ: F ⇒ G with θ_r: θ_Y ∘ F(r) ≅ G(r) ∘ θ_X for each generating r: X → Y."""
    source: TwoFunctor
    target: TwoFunctor
    comp: Mapping     # object -> FinFunctor
    cell: Mapping     # 1-cell -> NatTransf

    def along(self, x: str, cells: Sequence) -> NatTransf:
        """The component at a word, built by the pseudonaturality composition rule."""
        F, G = self.source, self.target
        out = identity_nat(self.comp[x])
        Fw = identity_functor(F.obj[x])
        for c in cells:
            out = vcompose(whisker_right(G.one[c], out), whisker_left(self.cell[c], Fw))
            Fw = compose_functors(F.one[c], Fw)
        return out


def pseudonat_violation(t: PseudoNat) -> str | None:
    F, G, P = t.source, t.target, t.source.pres
    for x in P.objects:
        c = t.comp.get(x)
        if c is None or c.source != F.obj[x] or c.target != G.obj[x]:
            return f"component at {x} is ill-typed"
    for r, (x, y) in P.one_cells.items():
        a = t.cell.get(r)
        if a is None or a.source != compose_functors(t.comp[y], F.one[r]) or \
                a.target != compose_functors(G.one[r], t.comp[x]):
            return f"cell at {r} is ill-typed"
        if not a.is_invertible():
            return f"cell at {r} is not invertible"
    for g, gen in P.two_cells.items():
        x, y = gen.src.src, gen.src.tgt
        lhs = vcompose(whisker_left(G.two[g], t.comp[x]), t.along(x, gen.src.cells))
        rhs = vcompose(t.along(x, gen.tgt.cells), whisker_right(t.comp[y], F.two[g]))
        if not _same_cell(lhs, rhs):
            return f"naturality at {g}"
    for lhs, rhs in P.rules:
        x = P.one_cells[(lhs or rhs)[0]][0]
        if not _same_cell(t.along(x, lhs), t.along(x, rhs)):
            return f"compatibility with {'·'.join(lhs)} = {'·'.join(rhs) or '1'}"
    return None


def identity_pseudonat(F: TwoFunctor) -> PseudoNat:
    return PseudoNat(F, F, {x: identity_functor(F.obj[x]) for x in F.pres.objects},
                     {r: identity_nat(F.one[r]) for r in F.pres.one_cells})


def compose_pseudonat(t: PseudoNat, s: PseudoNat) -> PseudoNat:
    """t ∘ s for s: F ⇒ G and t: G ⇒ H."""
    P = s.source.pres
    comp = {x: compose_functors(t.comp[x], s.comp[x]) for x in P.objects}
    cell = {}
    for r, (x, y) in P.one_cells.items():
        cell[r] = vcompose(whisker_left(t.cell[r], s.comp[x]),
                           whisker_right(t.comp[y], s.cell[r]))
    return PseudoNat(s.source, t.target, comp, cell)


def same_pseudonat(a: PseudoNat, b: PseudoNat) -> bool:
    return all(a.comp[x] == b.comp[x] for x in a.comp) and \
        all(_same_cell(a.cell[r], b.cell[r]) for r in a.cell)


@dataclass(frozen=True)
class Modification:
    source: PseudoNat
    target: PseudoNat
    comp: Mapping     # object -> NatTransf source.comp[x] ⇒ target.comp[x]


def modification_violation(m: Modification) -> str | None:
    s, t = m.source, m.target
    F, G, P = s.source, s.target, s.source.pres
    for x in P.objects:
        a = m.comp.get(x)
        if a is None or a.source != s.comp[x] or a.target != t.comp[x]:
            return f"component at {x} is ill-typed"
    for r, (x, y) in P.one_cells.items():
        lhs = vcompose(whisker_right(G.one[r], m.comp[x]), s.cell[r])
        rhs = vcompose(t.cell[r], whisker_left(m.comp[y], F.one[r]))
        if not _same_cell(lhs, rhs):
            return f"compatibility at {r}"
    return None


def enumerate_pseudonaturals(F: TwoFunctor, G: TwoFunctor,
                             counter: NodeCounter | None = None) -> list:
    """Every pseudonatural F ⇒ G (generators only, then validated)."""
    counter = counter or NodeCounter("pseudonatural search")
    P = F.pres
    objs = list(P.objects)
    ones = list(P.one_cells)
    comps = [list(iter_functors(F.obj[x], G.obj[x], counter=counter)) for x in objs]
    out = []
    for choice in iproduct(*comps):
        comp = dict(zip(objs, choice))
        cands = []
        for r in ones:
            x, y = P.one_cells[r]
            cands.append(list(iter_nat_transfs(compose_functors(comp[y], F.one[r]),
                                               compose_functors(G.one[r], comp[x]),
                                               invertible=True, counter=counter)))
        for cells in iproduct(*cands):
            counter.tick()
            t = PseudoNat(F, G, comp, dict(zip(ones, cells)))
            if pseudonat_violation(t) is None:
                out.append(t)
    return out


# ---------------------------------------------------------------------------
# the mate construction


@dataclass(frozen=True)
class MateInverse:
    u: PseudoNat
    eta: Modification     # 1 ⇒ u f
    eps: Modification     # f u ⇒ 1


def _adjoint_data(fX: FinFunctor, given):
    if given is None:
        d = find_equivalence_inverse(fX)
        if d is None:
            raise NotPointwiseEquivalence(f"component {fX.label or ''} is not an equivalence")
        return d.G, d.unit, d.counit
    uX, eta, eps = given
    if not (eta.is_invertible() and eps.is_invertible()) or \
            not _triangles(fX, uX, eta, eps):
        raise NotPointwiseEquivalence("supplied data is not an adjoint equivalence")
    return uX, eta, eps


def _triangles(fX, uX, eta, eps) -> bool:
    t1 = vcompose(whisker_left(eps, fX), whisker_right(fX, eta))
    t2 = vcompose(whisker_right(uX, eps), whisker_left(eta, uX))
    return t1.is_identity() and t2.is_identity()


def mate_inverse(f: PseudoNat, data: Mapping | None = None) -> MateInverse:
    """An inverse equivalence of a pointwise equivalence f: F ⇒ G.

    ``data`` optionally maps objects to (u_X, η_X, ε_X) with f_X ⊣ u_X.  The
    cell of u at r is the inverse of the mate of f_r.
    """
    F, G, P = f.source, f.target, f.source.pres
    data = data or {}
    adj = {x: _adjoint_data(f.comp[x], data.get(x)) for x in P.objects}
    comp = {x: adj[x][0] for x in P.objects}
    cell = {}
    for r, (x, y) in P.one_cells.items():
        uX, _, epsX = adj[x]
        uY, etaY, _ = adj[y]
        a = whisker_right(compose_functors(uY, G.one[r]), inverse_nat(epsX))
        b = whisker_right(uY, whisker_left(inverse_nat(f.cell[r]), uX))
        c = whisker_left(inverse_nat(etaY), compose_functors(F.one[r], uX))
        cell[r] = vcompose(c, vcompose(b, a))
    u = PseudoNat(G, F, comp, cell)
    bad = pseudonat_violation(u)
    if bad:
        raise InternalConsistencyError(f"mate is not pseudonatural: {bad}")
    eta = Modification(identity_pseudonat(F), compose_pseudonat(u, f),
                       {x: adj[x][1] for x in P.objects})
    eps = Modification(compose_pseudonat(f, u), identity_pseudonat(G),
                       {x: adj[x][2] for x in P.objects})
    for m in (eta, eps):
        bad = modification_violation(m)
        if bad:
            raise InternalConsistencyError(f"unit or counit is not a modification: {bad}")
    for x in P.objects:
        if not _triangles(f.comp[x], comp[x], adj[x][1], adj[x][2]):
            raise InternalConsistencyError(f"triangle equations fail at {x}")
    return MateInverse(u, eta, eps)


# ---------------------------------------------------------------------------
# arrows and spans


@dataclass(frozen=True)
class Span:
    left: FinFunctor      # a: R → A
    right: FinFunctor     # b: R → B

    @property
    def apex(self) -> FinCategory:
        return self.left.source


def span_embed(f: FinFunctor) -> Span:
    pl = pseudolimit_of_arrow(f, verify=False, check_props=False)
    return Span(pl.p_f, pl.q_f)


def span_map(f: FinFunctor, g: FinFunctor, r: FinFunctor, s: FinFunctor,
             alpha: NatTransf) -> FinFunctor:
    """Pα: Pf → Pg induced by a square (r, s, α: g r ≅ s f)."""
    Pf, Pg = span_embed(f).apex, span_embed(g).apex
    C, D = g.source, g.target

    def ob(k):
        a, phi, b = k
        return (r.omap[a], D.compose(s.mmap[phi], alpha[a]), s.omap[b])

    omap = tuple(Pg.oindex(ob(k)) for k in Pf.okeys)
    mmap = tuple(Pg.mindex((ob(x), ob(y), r.mmap[u], s.mmap[v])) for x, y, u, v in Pf.mkeys)
    return FinFunctor(Pf, Pg, omap, mmap, "Pα")


def check_span_image(sp: Span) -> bool:
    a, b = sp.left, sp.right
    if not classify_functor(a, flags=("surjective_equivalence",)).surjective_equivalence:
        return False
    ab = pair_functor(a, b)
    return bool(classify_functor(ab, flags=("discrete_isofibration",)).discrete_isofibration)


def find_section(a: FinFunctor) -> FinFunctor | None:
    """Least s with a ∘ s = 1."""
    R, A = a.source, a.target
    cands = {x: [r for r in range(R.n_obj) if a.omap[r] == x] for x in range(A.n_obj)}
    for s in iter_functors(A, R, obj_candidates=cands):
        if compose_functors(a, s) == identity_functor(A):
            return s
    return None


def span_invert(sp: Span, section: FinFunctor | None = None) -> FinFunctor:
    """b ∘ s_a."""
    if not check_span_image(sp):
        raise NotInImage("span is not in the image of span_embed")
    s = section or find_section(sp.left)
    if s is None or compose_functors(sp.left, s) != identity_functor(sp.left.target):
        raise NotInImage("no section of the left leg")
    return compose_functors(sp.right, s)


def cleavage_rho(f: FinFunctor, s: FinFunctor) -> NatTransf:
    """The unique ρ: s f ≅ 1 with f ρ = id, for a cloven surjective equivalence."""
    A = f.source
    if compose_functors(f, s) != identity_functor(f.target):
        raise NotCloven("f ∘ s is not the identity")
    comps = []
    for x in range(A.n_obj):
        y = s.omap[f.omap[x]]
        hits = [m for m in A.isos(y, x) if f.target.is_identity(f.mmap[m])]
        if not hits:
            raise NotCloven(f"no iso over an identity at {A.objects[x]}")
        if len(hits) > 1:
            raise InternalConsistencyError("ρ is not unique: f is not faithful")
        comps.append(hits[0])
    rho = NatTransf(compose_functors(s, f), identity_functor(A), tuple(comps), "ρ")
    bad = naturality_violation(rho.source, rho.target, rho.components)
    if bad:
        raise NotCloven(f"ρ is not natural: {bad}")
    return rho


def span_comparison(sp: Span, section: FinFunctor | None = None) -> FinFunctor:
    """η_R: R → P(b s_a), r ↦ (a r, b ρ_r, b r); an isomorphism of spans."""
    a, b = sp.left, sp.right
    s = section or find_section(a)
    if s is None:
        raise NotInImage("no section of the left leg")
    f = compose_functors(b, s)
    emb = span_embed(f)
    Pf = emb.apex
    rho = cleavage_rho(a, s)
    R = sp.apex

    def ob(r):
        return (a.omap[r], b.mmap[rho[r]], b.omap[r])

    omap = tuple(Pf.oindex(ob(r)) for r in range(R.n_obj))
    mmap = tuple(Pf.mindex((ob(R.src[w]), ob(R.tgt[w]), a.mmap[w], b.mmap[w]))
                 for w in range(R.n_mor))
    eta = FinFunctor(R, Pf, omap, mmap, "η_R")
    if compose_functors(emb.left, eta) != a or compose_functors(emb.right, eta) != b:
        raise InternalConsistencyError("comparison does not commute with the legs")
    return eta


def span_isomorphisms(s1: Span, s2: Span) -> list:
    """Isomorphisms of apexes commuting with both legs."""
    R1, R2 = s1.apex, s2.apex
    if (R1.n_obj, R1.n_mor) != (R2.n_obj, R2.n_mor):
        return []
    cands = {r: [x for x in range(R2.n_obj) if s2.left.omap[x] == s1.left.omap[r]
                 and s2.right.omap[x] == s1.right.omap[r]] for r in range(R1.n_obj)}
    out = []
    for h in iter_functors(R1, R2, obj_candidates=cands, injective=True):
        if compose_functors(s2.left, h) == s1.left and compose_functors(s2.right, h) == s1.right:
            out.append(h)
    return out


# ---------------------------------------------------------------------------
# cloven surjective equivalences as 2-functors out of RE


@dataclass(frozen=True)
class ClovenEquivalence:
    f: FinFunctor
    s: FinFunctor

    @property
    def rho(self) -> NatTransf:
        return cleavage_rho(self.f, self.s)


def cloven_classifier(c: ClovenEquivalence) -> TwoFunctor:
    """K(f, s_f): RE → Cat with p ↦ f, q ↦ s_f, η ↦ ρ_f."""
    RE = standard_presentation("RE")
    K = TwoFunctor(RE, {"0": c.f.source, "1": c.f.target}, {"p": c.f, "q": c.s},
                   {"η": c.rho}, "K")
    bad = validate_two_functor(K)
    if bad:
        raise NotCloven(f"not a 2-functor out of RE: {bad}")
    return K


def classify_square(c1: ClovenEquivalence, c2: ClovenEquivalence, u: FinFunctor,
                    v: FinFunctor) -> PseudoNat:
    """K(u, v): identity cell at p, the unique s^u_v: u s_f ≅ s_g v at q."""
    f, g = c1.f, c2.f
    if compose_functors(g, u) != compose_functors(v, f):
        raise NotCloven("the square (u, v) does not commute")
    K1, K2 = cloven_classifier(c1), cloven_classifier(c2)
    C = g.source
    src, tgt = compose_functors(u, c1.s), compose_functors(c2.s, v)
    comps = []
    for b in range(f.target.n_obj):
        hits = [m for m in C.isos(src.omap[b], tgt.omap[b])
                if g.target.is_identity(g.mmap[m])]
        if len(hits) != 1:
            raise InternalConsistencyError(f"s^u_v is not unique at {b}: {len(hits)} candidates")
        comps.append(hits[0])
    s_uv = NatTransf(src, tgt, tuple(comps), "s^u_v")
    t = PseudoNat(K1, K2, {"0": u, "1": v},
                  {"p": identity_nat(compose_functors(v, f)), "q": s_uv})
    bad = pseudonat_violation(t)
    if bad:
        raise InternalConsistencyError(f"K(u, v) is not pseudonatural: {bad}")
    return t
