"""Exhaustive decision procedures for the classes of functor used throughout.

Several flags are decided twice by unrelated routes; a disagreement raises
:class:`InternalConsistencyError` instead of silently picking one answer.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .category import (FinCategory, FinFunctor, NatTransf, compose_functors,
                       identity_functor)
from .errors import InternalConsistencyError

FLAGS = ("faithful", "full", "fully_faithful", "conservative", "isofibration",
         "discrete_isofibration", "normal_isofibration", "equivalence",
         "surjective_equivalence", "isomorphism", "fibration")


@dataclass
class FunctorClassification:
    functor: FinFunctor = field(repr=False)
    faithful: bool | None = None
    full: bool | None = None
    fully_faithful: bool | None = None
    conservative: bool | None = None
    isofibration: bool | None = None
    discrete_isofibration: bool | None = None
    normal_isofibration: bool | None = None
    equivalence: bool | None = None
    surjective_equivalence: bool | None = None
    isomorphism: bool | None = None
    fibration: bool | None = None
    witnesses: dict = field(default_factory=dict, repr=False)

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in FLAGS if getattr(self, k) is not None}


# ---------------------------------------------------------------------------
# elementary predicates


def is_faithful(F: FinFunctor) -> bool:
    A = F.source
    return all(len({F.mmap[m] for m in A.hom(a, b)}) == len(A.hom(a, b))
               for a in range(A.n_obj) for b in range(A.n_obj))


def is_full(F: FinFunctor) -> bool:
    A, B = F.source, F.target
    return all({F.mmap[m] for m in A.hom(a, b)} == set(B.hom(F.omap[a], F.omap[b]))
               for a in range(A.n_obj) for b in range(A.n_obj))


def is_conservative(F: FinFunctor) -> bool:
    A, B = F.source, F.target
    return all(A.is_iso(m) for m in range(A.n_mor) if B.is_iso(F.mmap[m]))


def iso_lifts(F: FinFunctor, a: int, beta: int) -> list:
    """All isomorphisms α out of a with F(α) = β, in index order."""
    A = F.source
    return [m for m in A.isos_from(a) if F.mmap[m] == beta]


def _isofib(F: FinFunctor, unique: bool):
    A, B = F.source, F.target
    for a in range(A.n_obj):
        for beta in B.isos_from(F.omap[a]):
            n = len(iso_lifts(F, a, beta))
            if n == 0 or (unique and n > 1):
                return False, (A.objects[a], B.morphisms[beta], n)
    return True, None


def is_isofibration(F: FinFunctor) -> bool:
    return _isofib(F, False)[0]


def is_discrete_isofibration_direct(F: FinFunctor) -> bool:
    return _isofib(F, True)[0]


def is_essentially_surjective(F: FinFunctor) -> bool:
    B = F.target
    image = set(F.omap)
    return all(any(B.isos(a, b) for a in image) for b in range(B.n_obj))


def is_equivalence(F: FinFunctor) -> bool:
    return is_faithful(F) and is_full(F) and is_essentially_surjective(F)


def is_surjective_on_objects(F: FinFunctor) -> bool:
    return set(F.omap) == set(range(F.target.n_obj))


def is_isomorphism(F: FinFunctor) -> bool:
    return sorted(F.omap) == list(range(F.target.n_obj)) and \
        sorted(F.mmap) == list(range(F.target.n_mor))


# ---------------------------------------------------------------------------
# normal isofibrations: a section of R_f over the codomain


def normal_cleavage(F: FinFunctor):
    """Least normal cleavage, as a function lift(a, β) → α, or None.

    Identity isomorphisms lift to identities; any other β: Fa ≅ b lifts to
    the least isomorphism α out of a with F(α) = β.
    """
    A, B = F.source, F.target
    table = {}
    for a in range(A.n_obj):
        for beta in B.isos_from(F.omap[a]):
            if beta == B.id(F.omap[a]):
                table[(a, beta)] = A.id(a)
                continue
            lifts = iso_lifts(F, a, beta)
            if not lifts:
                return None
            table[(a, beta)] = lifts[0]
    return lambda a, beta: table[(a, beta)]


def normal_section(F: FinFunctor):
    """The functor x: Pf → A built from the least normal cleavage, verified.

    x(a, β, b) is the target of the chosen lift of β, and x sends (u, v) to
    α'∘u∘α⁻¹.  Checks x∘s_f = 1 and F∘x = q_f.
    """
    from .limits import pseudolimit_of_arrow
    lift = normal_cleavage(F)
    if lift is None:
        return None
    A = F.source
    P = pseudolimit_of_arrow(F, verify=False, check_props=False)
    Pf = P.apex
    omap = tuple(A.tgt[lift(a, beta)] for a, beta, b in Pf.okeys)
    mmap = []
    for x, y, u, v in Pf.mkeys:
        ax, ay = lift(x[0], x[1]), lift(y[0], y[1])
        mmap.append(A.chain(ay, u, A.inverse(ax)))
    X = FinFunctor(Pf, A, omap, tuple(mmap), "x")
    if compose_functors(X, P.s_f) != identity_functor(A) or compose_functors(F, X) != P.q_f:
        raise InternalConsistencyError("normal section fails its slice equations")
    return X


# ---------------------------------------------------------------------------
# fibrations


def cartesian_lift(F: FinFunctor, a1: int, u: int):
    """Least F-cartesian α with codomain a1 and F(α) = u, or None."""
    A, B = F.source, F.target
    for al in range(A.n_mor):
        if A.tgt[al] != a1 or F.mmap[al] != u:
            continue
        if _is_cartesian(F, al):
            return al
    return None


def _is_cartesian(F: FinFunctor, al: int) -> bool:
    A, B = F.source, F.target
    a0, a1 = A.src[al], A.tgt[al]
    u = F.mmap[al]
    for c in range(A.n_obj):
        for g in A.hom(c, a1):
            for w in B.hom(F.omap[c], F.omap[a0]):
                if B.compose(u, w) != F.mmap[g]:
                    continue
                n = sum(1 for d in A.hom(c, a0)
                        if A.compose(al, d) == g and F.mmap[d] == w)
                if n != 1:
                    return False
    return True


def is_fibration_lifts(F: FinFunctor):
    A, B = F.source, F.target
    cleavage = {}
    for a1 in range(A.n_obj):
        for u in range(B.n_mor):
            if B.tgt[u] != F.omap[a1]:
                continue
            al = cartesian_lift(F, a1, u)
            if al is None:
                return False, None
            cleavage[(a1, u)] = al
    return True, cleavage


def is_fibration_comma(F: FinFunctor) -> bool:
    """t_F: A^𝟐 → B/F has a right adjoint with identity counit.

    For every object y = (b, φ: b → F a', a') of the comma category we look
    for x with t(x) = y such that t: A^𝟐(z, x) → B/F(t z, y) is bijective.
    """
    from .category import arrow_category
    from .limits import oplax_limit_of_arrow, power_cone
    A, B = F.source, F.target
    A2 = power_cone(A, arrow_category(), verify=False).apex
    C = oplax_limit_of_arrow(F, verify=False).apex

    def t_ob(k):
        om, mm = k
        return (F.omap[om[0]], F.mmap[mm[2]], om[1])

    t_omap = [C.oindex(t_ob(k)) for k in A2.okeys]
    t_mmap = [C.mindex((t_ob(s), t_ob(tt), F.mmap[c[0]], c[1])) for s, tt, c in A2.mkeys]
    fibre = {}
    for x, y in enumerate(t_omap):
        fibre.setdefault(y, []).append(x)
    for y in range(C.n_obj):
        good = False
        for x in fibre.get(y, ()):
            if all(sorted(t_mmap[m] for m in A2.hom(z, x)) == list(C.hom(t_omap[z], y))
                   for z in range(A2.n_obj)):
                good = True
                break
        if not good:
            return False
    return True


# ---------------------------------------------------------------------------
# the discrete-isofibration criterion through R_f


def is_discrete_isofibration_rf(F: FinFunctor) -> bool:
    from .limits import rf_comparison
    return is_isomorphism(rf_comparison(F))


# ---------------------------------------------------------------------------


def classify_functor(F: FinFunctor, flags=None, cross_check: bool = True) -> FunctorClassification:
    """Decide the requested flags (all by default), with witnesses where true."""
    want = set(FLAGS if flags is None else flags)
    out = FunctorClassification(F)
    cache: dict = {}

    def get(name):
        if name not in cache:
            cache[name] = _decide(name, F, get, out, cross_check)
        return cache[name]

    for name in FLAGS:
        if name in want:
            setattr(out, name, get(name))
    return out


def _decide(name, F, get, out, cross_check):
    if name == "faithful":
        return is_faithful(F)
    if name == "full":
        return is_full(F)
    if name == "fully_faithful":
        return get("faithful") and get("full")
    if name == "conservative":
        return is_conservative(F)
    if name == "isofibration":
        return is_isofibration(F)
    if name == "discrete_isofibration":
        ok, bad = _isofib(F, True)
        if not ok:
            out.witnesses["iso_lift_failure"] = bad
        if cross_check and is_discrete_isofibration_rf(F) != ok:
            raise InternalConsistencyError("unique-lift search and R_f criterion disagree")
        return ok
    if name == "normal_isofibration":
        x = normal_section(F)
        if x is not None:
            out.witnesses["normal_section"] = x
            out.witnesses["normal_cleavage"] = normal_cleavage(F)
        ok = x is not None
        if cross_check and ok != get("isofibration"):
            raise InternalConsistencyError("normal isofibration differs from isofibration")
        return ok
    if name == "equivalence":
        ok = get("fully_faithful") and is_essentially_surjective(F)
        if ok:
            out.witnesses["inverse"] = find_equivalence_inverse(F)
        return ok
    if name == "surjective_equivalence":
        ok = get("fully_faithful") and is_surjective_on_objects(F)
        if cross_check and ok != (get("equivalence") and get("isofibration")):
            raise InternalConsistencyError("surjective equivalence cross-check failed")
        return ok
    if name == "isomorphism":
        ok = is_isomorphism(F)
        if cross_check and ok != (get("equivalence") and get("discrete_isofibration")):
            raise InternalConsistencyError("isomorphism cross-check failed")
        return ok
    if name == "fibration":
        ok, cleavage = is_fibration_lifts(F)
        if ok:
            out.witnesses["cartesian_lifts"] = cleavage
        if cross_check and ok != is_fibration_comma(F):
            raise InternalConsistencyError("cartesian-lift search and comma test disagree")
        return ok
    raise KeyError(name)


# ---------------------------------------------------------------------------
# equivalence inverses


@dataclass(frozen=True)
class AdjointEquivalence:
    G: FinFunctor
    unit: NatTransf     # 1 ⇒ G F
    counit: NatTransf   # F G ⇒ 1


def find_equivalence_inverse(F: FinFunctor) -> AdjointEquivalence | None:
    """Least adjoint inverse (G, η, ε) of F, or None if F is no equivalence."""
    A, B = F.source, F.target
    if not (is_faithful(F) and is_full(F)):
        return None
    choice = []
    for b in range(B.n_obj):
        # prefer an exact preimage, so isomorphisms get strict inverses
        pick = next(((a, B.id(b)) for a in range(A.n_obj) if F.omap[a] == b), None)
        for a in range(A.n_obj):
            if pick is not None:
                break
            isos = B.isos(F.omap[a], b)
            if isos:
                pick = (a, isos[0])
        if pick is None:
            return None
        choice.append(pick)

    def preimage(a, a2, m):
        return next(u for u in A.hom(a, a2) if F.mmap[u] == m)

    gm = []
    for v in range(B.n_mor):
        (a0, e0), (a1, e1) = choice[B.src[v]], choice[B.tgt[v]]
        gm.append(preimage(a0, a1, B.chain(B.inverse(e1), v, e0)))
    G = FinFunctor(B, A, tuple(a for a, _ in choice), tuple(gm), "G")
    eps = NatTransf(compose_functors(F, G), identity_functor(B), tuple(e for _, e in choice))
    eta = NatTransf(identity_functor(A), compose_functors(G, F),
                    tuple(preimage(a, G.omap[F.omap[a]], B.inverse(choice[F.omap[a]][1]))
                          for a in range(A.n_obj)))
    # triangle identities: εF ∘ Fη = 1_F and Gε ∘ ηG = 1_G
    for a in range(A.n_obj):
        if B.compose(eps[F.omap[a]], F.mmap[eta[a]]) != B.id(F.omap[a]):
            raise InternalConsistencyError("first triangle identity fails")
    for b in range(B.n_obj):
        if A.compose(G.mmap[eps[b]], eta[G.omap[b]]) != A.id(G.omap[b]):
            raise InternalConsistencyError("second triangle identity fails")
    return AdjointEquivalence(G, eta, eps)
