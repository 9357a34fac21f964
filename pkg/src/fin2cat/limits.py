"""Two-dimensional limits in the 2-category of finite categories.

Every construction returns a :class:`LimitCone` whose universal property is
checked (unless ``verify=False``) against all cones out of a fixed family of
small test categories: functors X → apex must correspond bijectively to
cones out of X, and natural transformations between two such functors must
correspond bijectively to morphisms between the induced cones.

Apex objects are keyed by the tuples that define them, so ``apex.okey(i)`` of
a comma object is ``(a, φ, b)`` and so on.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Callable, Sequence

from .category import (FinCategory, FinFunctor, NatTransf, arrow_category,
                       build_category, compose_functors, discrete_category,
                       empty_category, free_iso, identity_functor, identity_nat,
                       parallel_pair, render, terminal_category, vcompose,
                       whisker_left, whisker_right)
from .errors import (FunctorError, NoChosenLimits, NotAFibration,
                     UniversalPropertyFailure, InternalConsistencyError)
from .search import enumerate_functors, iter_functors, iter_nat_transfs

KINDS = ("product", "power", "comma", "inserter", "equifier", "inverter",
         "splitting", "pseudolimit-arrow", "oplax-arrow", "pullback")


def test_shapes() -> list:
    """The categories with at most two objects used to probe universality."""
    return [empty_category(), terminal_category(), arrow_category(),
            discrete_category(2), free_iso()]


@dataclass(frozen=True)
class CellSpec:
    """A structural 2-cell of a cone: S∘P_i ⇒ T∘P_j (None means identity)."""
    i: int
    S: FinFunctor | None
    j: int
    T: FinFunctor | None
    invertible: bool = False


@dataclass(frozen=True, eq=False)
class ConeShape:
    """What a cone over a particular diagram consists of."""
    leg_targets: tuple
    cells: tuple = ()
    cone_ok: Callable | None = None
    mor_ok: Callable | None = None


@dataclass(frozen=True, eq=False)
class LimitCone:
    kind: str
    apex: FinCategory
    projections: tuple
    cells: tuple
    shape: ConeShape = field(repr=False)
    verified: bool = False
    extras: dict = field(default_factory=dict, repr=False)

    @property
    def is_empty(self) -> bool:
        return self.apex.n_obj == 0


def _after(F: FinFunctor | None, G: FinFunctor) -> FinFunctor:
    return G if F is None else compose_functors(F, G)


def _whisk(F: FinFunctor | None, theta: NatTransf) -> NatTransf:
    return theta if F is None else whisker_right(F, theta)


# ---------------------------------------------------------------------------
# universal property verification


def _enumerate_cones(shape: ConeShape, X: FinCategory):
    leg_lists = [enumerate_functors(X, T) for T in shape.leg_targets]
    for legs in iproduct(*leg_lists):
        cell_lists = []
        for cs in shape.cells:
            F = _after(cs.S, legs[cs.i])
            G = _after(cs.T, legs[cs.j])
            cell_lists.append(list(iter_nat_transfs(F, G, invertible=cs.invertible)))
        for cells in iproduct(*cell_lists):
            if shape.cone_ok is None or shape.cone_ok(legs, cells):
                yield (legs, cells)


def _cone_of(L: LimitCone, H: FinFunctor):
    legs = tuple(compose_functors(p, H) for p in L.projections)
    cells = tuple(whisker_left(c, H) for c in L.cells)
    return legs, cells


def _mor_valid(shape: ConeShape, cone1, cone2, thetas) -> bool:
    for cs, c1, c2 in zip(shape.cells, cone1[1], cone2[1]):
        lhs = vcompose(_whisk(cs.T, thetas[cs.j]), c1)
        rhs = vcompose(c2, _whisk(cs.S, thetas[cs.i]))
        if lhs.components != rhs.components:
            return False
    return shape.mor_ok is None or shape.mor_ok(thetas)


def verify_universal(L: LimitCone, shapes: Sequence[FinCategory] | None = None) -> None:
    """Raise UniversalPropertyFailure unless L is a limit cone."""
    for X in shapes if shapes is not None else test_shapes():
        Hs = enumerate_functors(X, L.apex)
        induced = {}
        for H in Hs:
            c = _cone_of(L, H)
            if L.shape.cone_ok is not None and not L.shape.cone_ok(*c):
                raise UniversalPropertyFailure(f"{L.kind}: projections do not form a cone")
            if c in induced:
                raise UniversalPropertyFailure(
                    f"{L.kind}: two factorizations of one cone out of {X.label}")
            induced[c] = H
        cones = set(_enumerate_cones(L.shape, X))
        if cones != set(induced):
            raise UniversalPropertyFailure(
                f"{L.kind}: cones out of {X.label} are not all factored "
                f"({len(cones)} cones, {len(induced)} factorizations)")
        for H, K in iproduct(Hs, repeat=2):
            cH, cK = _cone_of(L, H), _cone_of(L, K)
            images = set()
            for theta in iter_nat_transfs(H, K):
                t = tuple(whisker_right(p, theta) for p in L.projections)
                if t in images:
                    raise UniversalPropertyFailure(f"{L.kind}: 2-cells not unique")
                if not _mor_valid(L.shape, cH, cK, t):
                    raise UniversalPropertyFailure(f"{L.kind}: 2-cell image invalid")
                images.add(t)
            leg_cells = [list(iter_nat_transfs(a, b)) for a, b in zip(cH[0], cK[0])]
            n_valid = sum(1 for t in iproduct(*leg_cells) if _mor_valid(L.shape, cH, cK, t))
            if n_valid != len(images):
                raise UniversalPropertyFailure(
                    f"{L.kind}: 2-dimensional property fails out of {X.label}")


def _finish(L: LimitCone, verify: bool) -> LimitCone:
    if verify:
        verify_universal(L)
        object.__setattr__(L, "verified", True)
    return L


def _nat(F, G, comps) -> NatTransf:
    return NatTransf(F, G, tuple(comps))


# ---------------------------------------------------------------------------
# constructions


def product(cats: Sequence[FinCategory], verify: bool = True) -> LimitCone:
    cats = list(cats)
    objs = list(iproduct(*[range(C.n_obj) for C in cats]))
    mors = [m for m in iproduct(*[range(C.n_mor) for C in cats])]
    P = build_category(
        objs, mors,
        lambda m: tuple(C.src[x] for C, x in zip(cats, m)),
        lambda m: tuple(C.tgt[x] for C, x in zip(cats, m)),
        lambda o: tuple(C.id(x) for C, x in zip(cats, o)),
        lambda g, f: tuple(C.compose(a, b) for C, a, b in zip(cats, g, f)),
        label="×".join(C.label for C in cats) or "1", check=False,
        oname=lambda o: "(" + ",".join(C.objects[x] for C, x in zip(cats, o)) + ")",
        mname=lambda m: "(" + ",".join(C.morphisms[x] for C, x in zip(cats, m)) + ")")
    projs = tuple(FinFunctor(P, C, tuple(k[i] for k in P.okeys),
                             tuple(k[i] for k in P.mkeys), f"π{i}")
                  for i, C in enumerate(cats))
    return _finish(LimitCone("product", P, projs, (), ConeShape(tuple(cats))), verify)


def _functor_key(F: FinFunctor):
    return (F.omap, F.mmap)


def power_cone(A: FinCategory, E: FinCategory, verify: bool = True) -> LimitCone:
    """The cotensor A^E: functors E → A and natural transformations."""
    Fs = enumerate_functors(E, A)
    objs = [_functor_key(F) for F in Fs]
    mors = []
    for F in Fs:
        for G in Fs:
            for t in iter_nat_transfs(F, G):
                mors.append((_functor_key(F), _functor_key(G), t.components))
    nonid = E.non_identities()

    def oname(k):
        s = ",".join(A.objects[x] for x in k[0])
        if nonid:
            s += ";" + ",".join(A.morphisms[k[1][m]] for m in nonid)
        return "<" + s + ">"

    P = build_category(
        objs, mors, lambda m: m[0], lambda m: m[1],
        lambda o: (o, o, tuple(A.id(x) for x in o[0])),
        lambda g, f: (f[0], g[1], tuple(A.compose(b, a) for a, b in zip(f[2], g[2]))),
        label=f"{A.label}^{E.label}", check=False, oname=oname,
        mname=lambda m: "<" + ",".join(A.morphisms[c] for c in m[2]) + ">:"
        + oname(m[0]) + "→" + oname(m[1]))
    ev = tuple(FinFunctor(P, A, tuple(k[0][e] for k in P.okeys),
                          tuple(k[2][e] for k in P.mkeys), f"ev{E.objects[e]}")
               for e in range(E.n_obj))
    cells = tuple(_nat(ev[E.src[u]], ev[E.tgt[u]],
                       [k[1][u] for k in P.okeys])
                  for u in range(E.n_mor))
    shape = ConeShape(
        (A,) * E.n_obj,
        tuple(CellSpec(E.src[u], None, E.tgt[u], None) for u in range(E.n_mor)),
        cone_ok=lambda legs, cs: _power_cone_ok(E, legs, cs))
    L = LimitCone("power", P, ev, cells, shape, extras={"base": A, "exponent": E})
    return _finish(L, verify)


def _power_cone_ok(E: FinCategory, legs, cells) -> bool:
    for e in range(E.n_obj):
        if not cells[E.id(e)].is_identity():
            return False
    for (g, f), h in E.table.items():
        if vcompose(cells[g], cells[f]).components != cells[h].components:
            return False
    return True


def power(A: FinCategory, E: FinCategory, verify: bool = True) -> FinCategory:
    return power_cone(A, E, verify).apex


def power_functor(F: FinFunctor, E: FinCategory, PA: FinCategory | None = None,
                  PB: FinCategory | None = None) -> FinFunctor:
    """F^E: A^E → B^E, postcomposition."""
    PA = PA or power(F.source, E, verify=False)
    PB = PB or power(F.target, E, verify=False)
    omap, mmap = [], []
    for k in PA.okeys:
        omap.append(PB.oindex((tuple(F.omap[x] for x in k[0]),
                               tuple(F.mmap[x] for x in k[1]))))
    for s, t, c in PA.mkeys:
        mmap.append(PB.mindex(
            (PB.okey(omap[PA.oindex(s)]), PB.okey(omap[PA.oindex(t)]),
             tuple(F.mmap[x] for x in c))))
    return FinFunctor(PA, PB, tuple(omap), tuple(mmap), f"{F.label}^E")


def restriction_functor(A: FinCategory, J: FinFunctor, PE: FinCategory | None = None,
                        PD: FinCategory | None = None) -> FinFunctor:
    """A^J: A^E → A^D for J: D → E, precomposition."""
    D, E = J.source, J.target
    PE = PE or power(A, E, verify=False)
    PD = PD or power(A, D, verify=False)
    omap, mmap = [], []
    for om, mm in PE.okeys:
        omap.append(PD.oindex((tuple(om[J.omap[d]] for d in range(D.n_obj)),
                               tuple(mm[J.mmap[m]] for m in range(D.n_mor)))))
    for s, t, c in PE.mkeys:
        mmap.append(PD.mindex((PD.okey(omap[PE.oindex(s)]), PD.okey(omap[PE.oindex(t)]),
                               tuple(c[J.omap[d]] for d in range(D.n_obj)))))
    return FinFunctor(PE, PD, tuple(omap), tuple(mmap), "restrict")


def _comma_apex(f: FinFunctor, g: FinFunctor, only_iso: bool, label: str):
    A, B, C = f.source, g.source, f.target
    objs = [(a, phi, b) for a in range(A.n_obj) for b in range(B.n_obj)
            for phi in C.hom(f.omap[a], g.omap[b]) if not only_iso or C.is_iso(phi)]
    mors = []
    for x in objs:
        for y in objs:
            for u in A.hom(x[0], y[0]):
                for v in B.hom(x[2], y[2]):
                    if C.compose(g.mmap[v], x[1]) == C.compose(y[1], f.mmap[u]):
                        mors.append((x, y, u, v))

    def oname(o):
        return f"({A.objects[o[0]]},{C.morphisms[o[1]]},{B.objects[o[2]]})"

    P = build_category(
        objs, mors, lambda m: m[0], lambda m: m[1],
        lambda o: (o, o, A.id(o[0]), B.id(o[2])),
        lambda h, k: (k[0], h[1], A.compose(h[2], k[2]), B.compose(h[3], k[3])),
        label=label, check=False, oname=oname,
        mname=lambda m: f"({A.morphisms[m[2]]},{B.morphisms[m[3]]}):{oname(m[0])}→{oname(m[1])}")
    p = FinFunctor(P, A, tuple(k[0] for k in P.okeys), tuple(k[2] for k in P.mkeys), "p")
    q = FinFunctor(P, B, tuple(k[2] for k in P.okeys), tuple(k[3] for k in P.mkeys), "q")
    cell = _nat(compose_functors(f, p), compose_functors(g, q), [k[1] for k in P.okeys])
    return P, p, q, cell


def comma_object(f: FinFunctor, g: FinFunctor, verify: bool = True) -> LimitCone:
    """f/g: objects (a, φ: fa → gb, b)."""
    if f.target != g.target:
        raise FunctorError("comma object needs a common codomain")
    P, p, q, cell = _comma_apex(f, g, False, f"{f.label or 'f'}/{g.label or 'g'}")
    shape = ConeShape((f.source, g.source), (CellSpec(0, f, 1, g),))
    return _finish(LimitCone("comma", P, (p, q), (cell,), shape), verify)


def oplax_limit_of_arrow(j: FinFunctor, verify: bool = True) -> LimitCone:
    """B/j = comma(1_B, j)."""
    L = comma_object(identity_functor(j.target), j, verify)
    return LimitCone("oplax-arrow", L.apex, L.projections, L.cells, L.shape, L.verified)


def inserter(f: FinFunctor, g: FinFunctor, verify: bool = True) -> LimitCone:
    """Objects (a, φ: fa → ga); morphisms u with gu∘φ = φ'∘fu."""
    if f.source != g.source or f.target != g.target:
        raise FunctorError("inserter needs a parallel pair")
    A, B = f.source, f.target
    objs = [(a, phi) for a in range(A.n_obj) for phi in B.hom(f.omap[a], g.omap[a])]
    mors = [(x, y, u) for x in objs for y in objs for u in A.hom(x[0], y[0])
            if B.compose(g.mmap[u], x[1]) == B.compose(y[1], f.mmap[u])]

    def oname(o):
        return f"({A.objects[o[0]]},{B.morphisms[o[1]]})"

    P = build_category(objs, mors, lambda m: m[0], lambda m: m[1],
                       lambda o: (o, o, A.id(o[0])),
                       lambda h, k: (k[0], h[1], A.compose(h[2], k[2])),
                       label="Ins", check=False, oname=oname,
                       mname=lambda m: f"{A.morphisms[m[2]]}:{oname(m[0])}→{oname(m[1])}")
    i = FinFunctor(P, A, tuple(k[0] for k in P.okeys), tuple(k[2] for k in P.mkeys), "i")
    eta = _nat(compose_functors(f, i), compose_functors(g, i), [k[1] for k in P.okeys])
    shape = ConeShape((A,), (CellSpec(0, f, 0, g),))
    return _finish(LimitCone("inserter", P, (i,), (eta,), shape), verify)


def _full_sub(A: FinCategory, keep: Sequence[int], label: str):
    keep = sorted(keep)
    ks = set(keep)
    mors = [m for m in range(A.n_mor) if A.src[m] in ks and A.tgt[m] in ks]
    S = build_category(keep, mors, A.src.__getitem__, A.tgt.__getitem__, A.id, A.compose,
                       label=label, check=False, oname=A.objects.__getitem__,
                       mname=A.morphisms.__getitem__)
    inc = FinFunctor(S, A, tuple(keep), tuple(mors), "incl")
    return S, inc


def equifier(alpha: NatTransf, beta: NatTransf, verify: bool = True) -> LimitCone:
    if alpha.source != beta.source or alpha.target != beta.target:
        raise FunctorError("equifier needs parallel 2-cells")
    A = alpha.dom
    S, inc = _full_sub(A, [a for a in range(A.n_obj) if alpha[a] == beta[a]], "Eq")
    shape = ConeShape((A,), (), cone_ok=lambda legs, cs: (
        whisker_left(alpha, legs[0]).components == whisker_left(beta, legs[0]).components))
    return _finish(LimitCone("equifier", S, (inc,), (), shape), verify)


def inverter(alpha: NatTransf, verify: bool = True) -> LimitCone:
    A, B = alpha.dom, alpha.cod
    S, inc = _full_sub(A, [a for a in range(A.n_obj) if B.is_iso(alpha[a])], "Inv")
    shape = ConeShape((A,), (), cone_ok=lambda legs, cs:
                      whisker_left(alpha, legs[0]).is_invertible())
    return _finish(LimitCone("inverter", S, (inc,), (), shape), verify)


def splitting(e: FinFunctor, verify: bool = True) -> LimitCone:
    """Split an idempotent endofunctor e through its fixed points."""
    A = e.source
    if compose_functors(e, e) != e:
        raise FunctorError("splitting needs an idempotent endofunctor")
    objs = [a for a in range(A.n_obj) if e.omap[a] == a]
    mors = [m for m in range(A.n_mor) if e.mmap[m] == m]
    S = build_category(objs, mors, A.src.__getitem__, A.tgt.__getitem__, A.id, A.compose,
                       label="Split", check=False, oname=A.objects.__getitem__,
                       mname=A.morphisms.__getitem__)
    inc = FinFunctor(S, A, tuple(objs), tuple(mors), "i")
    ret = FinFunctor(A, S, tuple(S.oindex(e.omap[a]) for a in range(A.n_obj)),
                     tuple(S.mindex(e.mmap[m]) for m in range(A.n_mor)), "r")
    shape = ConeShape((A,), (),
                      cone_ok=lambda legs, cs: compose_functors(e, legs[0]) == legs[0],
                      mor_ok=lambda th: whisker_right(e, th[0]).components == th[0].components)
    L = LimitCone("splitting", S, (inc,), (), shape, extras={"retraction": ret})
    return _finish(L, verify)


def strict_pullback(f: FinFunctor, p: FinFunctor, verify: bool = True) -> LimitCone:
    """Fibre product of object and morphism sets (exists in Cat for any f, p)."""
    if f.target != p.target:
        raise FunctorError("pullback needs a common codomain")
    A, B = f.source, p.source
    objs = [(a, b) for a in range(A.n_obj) for b in range(B.n_obj) if f.omap[a] == p.omap[b]]
    mors = [(u, v) for u in range(A.n_mor) for v in range(B.n_mor) if f.mmap[u] == p.mmap[v]]
    P = build_category(objs, mors, lambda m: (A.src[m[0]], B.src[m[1]]),
                       lambda m: (A.tgt[m[0]], B.tgt[m[1]]),
                       lambda o: (A.id(o[0]), B.id(o[1])),
                       lambda g, h: (A.compose(g[0], h[0]), B.compose(g[1], h[1])),
                       label="Pb", check=False,
                       oname=lambda o: f"({A.objects[o[0]]},{B.objects[o[1]]})",
                       mname=lambda m: f"({A.morphisms[m[0]]},{B.morphisms[m[1]]})")
    pa = FinFunctor(P, A, tuple(k[0] for k in P.okeys), tuple(k[0] for k in P.mkeys), "pA")
    pb = FinFunctor(P, B, tuple(k[1] for k in P.okeys), tuple(k[1] for k in P.mkeys), "pB")
    shape = ConeShape((A, B), (),
                      cone_ok=lambda legs, cs: compose_functors(f, legs[0]) ==
                      compose_functors(p, legs[1]),
                      mor_ok=lambda th: whisker_right(f, th[0]).components ==
                      whisker_right(p, th[1]).components)
    return _finish(LimitCone("pullback", P, (pa, pb), (), shape), verify)


# ---------------------------------------------------------------------------
# pseudolimit of an arrow


@dataclass(frozen=True, eq=False)
class PseudolimitArrow:
    f: FinFunctor
    cone: LimitCone
    apex: FinCategory
    p_f: FinFunctor
    q_f: FinFunctor
    lam: NatTransf
    s_f: FinFunctor
    r_f: FinFunctor | None = None


def pseudolimit_of_arrow(f: FinFunctor, verify: bool = True, check_props: bool = True,
                         with_rf: bool = False) -> PseudolimitArrow:
    """Pf: objects (a, α: fa ≅ b, b); p_f, q_f projections, λ_f: f p_f ≅ q_f."""
    A, B = f.source, f.target
    P, p, q, lam = _comma_apex(f, identity_functor(B), True, "Pf")
    shape = ConeShape((A, B), (CellSpec(0, f, 1, None, invertible=True),))
    cone = _finish(LimitCone("pseudolimit-arrow", P, (p, q), (lam,), shape), verify)
    s = FinFunctor(A, P, tuple(P.oindex((a, B.id(f.omap[a]), f.omap[a])) for a in range(A.n_obj)),
                   tuple(P.mindex(((A.src[u], B.id(f.omap[A.src[u]]), f.omap[A.src[u]]),
                                   (A.tgt[u], B.id(f.omap[A.tgt[u]]), f.omap[A.tgt[u]]),
                                   u, f.mmap[u])) for u in range(A.n_mor)), "s_f")
    # defining equations at the canonical section
    if compose_functors(p, s) != identity_functor(A) or compose_functors(q, s) != f \
            or not whisker_left(lam, s).is_identity():
        raise UniversalPropertyFailure("pseudolimit section equations fail")
    rf = rf_comparison(f, P) if with_rf else None
    out = PseudolimitArrow(f, cone, P, p, q, lam, s, rf)
    if check_props:
        from .classify import classify_functor
        from .category import pair_functor
        if not classify_functor(p, flags=("surjective_equivalence",)).surjective_equivalence:
            raise UniversalPropertyFailure("p_f is not a surjective equivalence")
        pq = pair_functor(p, q)
        if not classify_functor(pq, flags=("discrete_isofibration",)).discrete_isofibration:
            raise UniversalPropertyFailure("(p_f, q_f) is not a discrete isofibration")
    return out


def rf_comparison(f: FinFunctor, Pf: FinCategory | None = None,
                  AI: FinCategory | None = None) -> FinFunctor:
    """A^I → Pf sending φ: a ≅ a' to (a, fφ, fa')."""
    A, B = f.source, f.target
    if Pf is None:
        Pf = _comma_apex(f, identity_functor(B), True, "Pf")[0]
    AI = AI or power(A, free_iso(), verify=False)
    i = 2  # the morphism 0 → 1 of I

    def ob(k):
        om, mm = k
        return (om[0], f.mmap[mm[i]], f.omap[om[1]])

    omap = tuple(Pf.oindex(ob(k)) for k in AI.okeys)
    mmap = tuple(Pf.mindex((ob(s), ob(t), c[0], f.mmap[c[1]])) for s, t, c in AI.mkeys)
    return FinFunctor(AI, Pf, omap, mmap, "R_f")


# ---------------------------------------------------------------------------
# pullbacks along (normal) isofibrations and the pullback-based pie limits


def pullback(f: FinFunctor, p: FinFunctor, verify: bool = True) -> LimitCone:
    """Pullback of f along p, where p must be a discrete or normal isofibration.

    In the discrete case this is the fibre product.  Otherwise the pullback is
    built as a splitting of the idempotent on the pseudopullback that uses
    the least normal cleavage of p to move every object onto the strict fibre.
    """
    from .classify import classify_functor
    cl = classify_functor(p, flags=("discrete_isofibration", "normal_isofibration"))
    if cl.discrete_isofibration:
        L = strict_pullback(f, p, verify)
        L.extras["route"] = "discrete"
        return L
    if not cl.normal_isofibration:
        raise NotAFibration("pullback target is neither a discrete nor a normal isofibration")
    lift = cl.witnesses["normal_cleavage"]
    A, B, C = f.source, p.source, f.target
    # pseudopullback: (a, β: fa ≅ pb, b)
    P, pa, pb, beta = _comma_apex(f, p, True, "PsPb")

    def move(o):
        a, bt, b = o
        l = lift(b, C.inverse(bt))            # l: b ≅ b' over β⁻¹
        return l, (a, C.id(f.omap[a]), B.tgt[l])

    omap, mmap = [], []
    for o in P.okeys:
        omap.append(P.oindex(move(o)[1]))
    for x, y, u, v in P.mkeys:
        lx, x2 = move(x)
        ly, y2 = move(y)
        mmap.append(P.mindex((x2, y2, u, B.chain(ly, v, B.inverse(lx)))))
    t = FinFunctor(P, P, tuple(omap), tuple(mmap), "t'")
    S = splitting(t, verify=False)
    inc = S.projections[0]
    legs = (compose_functors(pa, inc), compose_functors(pb, inc))
    shape = ConeShape((A, B), (),
                      cone_ok=lambda lg, cs: compose_functors(f, lg[0]) ==
                      compose_functors(p, lg[1]),
                      mor_ok=lambda th: whisker_right(f, th[0]).components ==
                      whisker_right(p, th[1]).components)
    L = LimitCone("pullback", S.apex, legs, (), shape, extras={"route": "normal"})
    return _finish(L, verify)


def boundary_inclusion() -> FinFunctor:
    """j: 2 → 𝟐, the discrete two-object category into the walking arrow."""
    return FinFunctor(discrete_category(2), arrow_category(), (0, 1), (0, 1), "j")


def codiagonal_pair() -> FinFunctor:
    """∇: P_1 → 𝟐, identifying the two parallel arrows."""
    return FinFunctor(parallel_pair(), arrow_category(), (0, 1), (0, 1, 2, 2), "∇")


def inserter_via_pullback(f: FinFunctor, g: FinFunctor, verify: bool = True) -> LimitCone:
    B = f.target
    j = boundary_inclusion()
    B2, Bd = power(B, j.target, verify=False), power(B, j.source, verify=False)
    Bj = restriction_functor(B, j, B2, Bd)
    A = f.source
    fg = FinFunctor(A, Bd,
                    tuple(Bd.oindex(((f.omap[a], g.omap[a]), (B.id(f.omap[a]), B.id(g.omap[a]))))
                          for a in range(A.n_obj)),
                    tuple(Bd.mindex((((f.omap[A.src[u]], g.omap[A.src[u]]),
                                      (B.id(f.omap[A.src[u]]), B.id(g.omap[A.src[u]]))),
                                     ((f.omap[A.tgt[u]], g.omap[A.tgt[u]]),
                                      (B.id(f.omap[A.tgt[u]]), B.id(g.omap[A.tgt[u]]))),
                                     (f.mmap[u], g.mmap[u]))) for u in range(A.n_mor)), "⟨f,g⟩")
    L = pullback(fg, Bj, verify)
    L.extras["alternate"] = "inserter"
    return L


def equifier_via_pullback(alpha: NatTransf, beta: NatTransf, verify: bool = True) -> LimitCone:
    f, g = alpha.source, alpha.target
    A, B = f.source, f.target
    nab = codiagonal_pair()
    B2, BP = power(B, nab.target, verify=False), power(B, nab.source, verify=False)
    Bn = restriction_functor(B, nab, B2, BP)

    def key(a):
        return ((f.omap[a], g.omap[a]), (B.id(f.omap[a]), B.id(g.omap[a]), alpha[a], beta[a]))

    ab = FinFunctor(A, BP, tuple(BP.oindex(key(a)) for a in range(A.n_obj)),
                    tuple(BP.mindex((key(A.src[u]), key(A.tgt[u]), (f.mmap[u], g.mmap[u])))
                          for u in range(A.n_mor)), "⟨α,β⟩")
    L = pullback(ab, Bn, verify)
    L.extras["alternate"] = "equifier"
    return L


def pie_limit(kind: str, *data, verify: bool = True) -> LimitCone:
    """Dispatch to the direct construction of the named kind."""
    table = {
        "product": lambda cats: product(cats, verify),
        "power": lambda A, E: power_cone(A, E, verify),
        "comma": lambda f, g: comma_object(f, g, verify),
        "inserter": lambda f, g: inserter(f, g, verify),
        "equifier": lambda a, b: equifier(a, b, verify),
        "inverter": lambda a: inverter(a, verify),
        "splitting": lambda e: splitting(e, verify),
        "pseudolimit-arrow": lambda f: pseudolimit_of_arrow(f, verify).cone,
        "oplax-arrow": lambda j: oplax_limit_of_arrow(j, verify),
        "pullback": lambda f, p: pullback(f, p, verify),
    }
    if kind not in table:
        raise ValueError(f"unknown limit kind {kind!r}")
    return table[kind](*data)


def pie_alternate(kind: str, *data, verify: bool = True) -> LimitCone:
    if kind == "inserter":
        return inserter_via_pullback(*data, verify=verify)
    if kind == "equifier":
        return equifier_via_pullback(*data, verify=verify)
    raise ValueError("pullback-based alternates exist for inserter and equifier only")


def find_iso_over(L1: LimitCone, L2: LimitCone, leg: int = 0) -> FinFunctor | None:
    """An isomorphism L1.apex → L2.apex commuting with the given projection."""
    A1, A2 = L1.apex, L2.apex
    if A1.n_obj != A2.n_obj or A1.n_mor != A2.n_mor:
        return None
    p1, p2 = L1.projections[leg], L2.projections[leg]
    cands = {a: [b for b in range(A2.n_obj) if p2.omap[b] == p1.omap[a]]
             for a in range(A1.n_obj)}
    for F in iter_functors(A1, A2, obj_candidates=cands, injective=True):
        if compose_functors(p2, F) == p1:
            return F
    return None


# ---------------------------------------------------------------------------
# relative adjoints and chosen limits


@dataclass(frozen=True)
class RelativeAdjoint:
    f: FinFunctor
    theta: NatTransf


def _universal_arrow(C, B, g, c):
    """Least (b0, θ: c → g b0) such that v ↦ gv∘θ is bijective B(b0,b) → C(c,gb)."""
    for b0 in range(B.n_obj):
        for th in C.hom(c, g.omap[b0]):
            if all(sorted(C.compose(g.mmap[v], th) for v in B.hom(b0, b)) ==
                   list(C.hom(c, g.omap[b])) for b in range(B.n_obj)):
                return b0, th
    return None


def _left_adjoint_direct(j: FinFunctor, g: FinFunctor):
    A, B, C = j.source, g.source, g.target
    arrows = []
    for a in range(A.n_obj):
        ua = _universal_arrow(C, B, g, j.omap[a])
        if ua is None:
            return None
        arrows.append(ua)
    mmap = []
    for u in range(A.n_mor):
        b0, th0 = arrows[A.src[u]]
        b1, th1 = arrows[A.tgt[u]]
        target = C.compose(th1, j.mmap[u])
        mmap.append(next(v for v in B.hom(b0, b1) if C.compose(g.mmap[v], th0) == target))
    f = FinFunctor(A, B, tuple(b for b, _ in arrows), tuple(mmap), "f")
    theta = NatTransf(j, compose_functors(g, f), tuple(t for _, t in arrows))
    return RelativeAdjoint(f, theta)


def _comma_left_adjoint(j: FinFunctor, g: FinFunctor, invertible_unit: bool) -> bool:
    """Does p_A: j/g → A have a left adjoint with identity (or invertible) unit?"""
    L = comma_object(j, g, verify=False)
    P, pA = L.apex, L.projections[0]
    A = j.source
    for a in range(A.n_obj):
        found = False
        for y0 in range(P.n_obj):
            units = A.isos(a, pA.omap[y0]) if invertible_unit else \
                ([A.id(a)] if pA.omap[y0] == a else [])
            for eta in units:
                ok = True
                for y in range(P.n_obj):
                    images = [A.compose(pA.mmap[w], eta) for w in P.hom(y0, y)]
                    if len(set(images)) != len(images) or \
                            sorted(images) != sorted(A.hom(a, pA.omap[y])):
                        ok = False
                        break
                if ok:
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True


def relative_adjoint_verdicts(j: FinFunctor, g: FinFunctor) -> tuple:
    """(direct search, comma with identity unit, comma with invertible unit), unchecked."""
    if j.target != g.target:
        raise FunctorError("relative adjoint needs a common codomain")
    return (_left_adjoint_direct(j, g) is not None, _comma_left_adjoint(j, g, False),
            _comma_left_adjoint(j, g, True))


def has_relative_left_adjoint(j: FinFunctor, g: FinFunctor, details: bool = False):
    """Decide whether g has a left adjoint relative to j, three ways.

    Returns the witness (f, θ) or None; with ``details`` also the three verdicts.
    """
    if j.target != g.target:
        raise FunctorError("relative adjoint needs a common codomain")
    direct = _left_adjoint_direct(j, g)
    m2 = _comma_left_adjoint(j, g, invertible_unit=False)
    m3 = _comma_left_adjoint(j, g, invertible_unit=True)
    verdicts = (direct is not None, m2, m3)
    if len(set(verdicts)) != 1:
        raise InternalConsistencyError(f"relative adjoint methods disagree: {verdicts}")
    return (direct, verdicts) if details else direct


@dataclass(frozen=True)
class ChosenLimit:
    apex: int
    legs: tuple


def _is_limit_cone(X: FinCategory, A: FinCategory, D: FinFunctor, L: int, legs) -> bool:
    for x in range(X.n_obj):
        cones = [c for c in iproduct(*[X.hom(x, D.omap[a]) for a in range(A.n_obj)])
                 if _is_cone(X, A, D, c)]
        maps = {}
        for k in X.hom(x, L):
            maps.setdefault(tuple(X.compose(l, k) for l in legs), []).append(k)
        if sorted(maps) != sorted(cones) or any(len(v) != 1 for v in maps.values()):
            return False
    return True


def _is_cone(X, A, D, legs) -> bool:
    return all(X.compose(D.mmap[u], legs[A.src[u]]) == legs[A.tgt[u]] for u in range(A.n_mor))


def chosen_limit(X: FinCategory, A: FinCategory, D: FinFunctor) -> ChosenLimit | None:
    """The least limit cone of D: A → X (least apex, then least legs)."""
    for L in range(X.n_obj):
        for legs in iproduct(*[X.hom(L, D.omap[a]) for a in range(A.n_obj)]):
            if _is_cone(X, A, D, legs) and _is_limit_cone(X, A, D, L, legs):
                return ChosenLimit(L, tuple(legs))
    return None


def _factor(X, A, D, lim: ChosenLimit, x, cone) -> int:
    ks = [k for k in X.hom(x, lim.apex)
          if all(X.compose(l, k) == c for l, c in zip(lim.legs, cone))]
    if len(ks) != 1:
        raise UniversalPropertyFailure("chosen limit factorization not unique")
    return ks[0]


def preserves_chosen_limits(F: FinFunctor, A: FinCategory, details: bool = False):
    """Is the mate F∘lim ⇒ lim∘F^A of the strict square invertible?

    The mate at a diagram D is  lim_Y(Fε_D) ∘ η_{F lim D}, where ε is the counit
    of Δ ⊣ lim in X and η the unit in Y.  The answer is cross-checked against
    the direct test that F sends each chosen limit cone to a limit cone.
    """
    X, Y = F.source, F.target
    diagrams = enumerate_functors(A, X)
    lims_X = {}
    for D in diagrams:
        c = chosen_limit(X, A, D)
        if c is None:
            raise NoChosenLimits(f"source has no limit for a diagram of shape {A.label}")
        lims_X[D] = c
    lims_Y: dict = {}

    def limY(E):
        if E not in lims_Y:
            c = chosen_limit(Y, A, E)
            if c is None:
                raise NoChosenLimits(f"target has no limit for a diagram of shape {A.label}")
            lims_Y[E] = c
        return lims_Y[E]

    for E in enumerate_functors(A, Y):
        limY(E)
    mate_iso = True
    direct = True
    for D in diagrams:
        lx = lims_X[D]
        FD = compose_functors(F, D)
        y0 = F.omap[lx.apex]
        # unit of Δ ⊣ lim at y0: factor the identity cone on y0
        const = FinFunctor(A, Y, (y0,) * A.n_obj, (Y.id(y0),) * A.n_mor)
        lc = limY(const)
        eta = _factor(Y, A, const, lc, y0, tuple(Y.id(y0) for _ in range(A.n_obj)))
        # lim_Y applied to Fε_D: Δ(F lim D) → FD
        lfd = limY(FD)
        Feps = tuple(F.mmap[l] for l in lx.legs)
        limFeps = _factor(Y, A, FD, lfd, lc.apex,
                          tuple(Y.compose(Feps[a], lc.legs[a]) for a in range(A.n_obj)))
        mate = Y.compose(limFeps, eta)
        mate_iso = mate_iso and Y.is_iso(mate)
        direct = direct and _is_limit_cone(Y, A, FD, y0, Feps)
    if mate_iso != direct:
        raise InternalConsistencyError("mate test and direct cone test disagree")
    return (mate_iso, {"mate": mate_iso, "direct": direct}) if details else mate_iso
