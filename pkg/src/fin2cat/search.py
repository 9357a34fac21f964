"""Backtracking enumeration of functors, natural transformations and isomorphisms.

Candidates are always tried in ascending index order, so every enumeration
comes out in lexicographic order of ``(object map, morphism map)`` and "the
least witness" is simply the first one found.
"""
from __future__ import annotations

from typing import Iterator, Mapping

from .budget import NodeCounter, current_budget
from .category import (FinCategory, FinFunctor, NatTransf, _check_parallel,
                       make_functor)
from .errors import SizeBudgetExceeded


def _constraints(A: FinCategory):
    """For each non-identity morphism, the composition triples it closes.

    Morphisms are assigned in index order; a triple (g, f, h) with g∘f = h
    is attached to whichever of its non-identity members comes last.
    """
    order = A.non_identities()
    pos = {m: i for i, m in enumerate(order)}
    closes = {m: [] for m in order}
    for (g, f), h in A.table.items():
        if A.is_identity(g) or A.is_identity(f):
            continue
        # identities are assigned up front, so only non-identities compete for last
        last = max((x for x in (g, f, h) if x in pos), key=pos.__getitem__)
        closes[last].append((g, f, h))
    return order, closes


def iter_functors(A: FinCategory, B: FinCategory, *,
                  obj_candidates: Mapping | None = None,
                  fixed_objects: Mapping | None = None,
                  fixed_morphisms: Mapping | None = None,
                  injective: bool = False,
                  counter: NodeCounter | None = None) -> Iterator[FinFunctor]:
    """Yield every functor A → B satisfying the given restrictions.

    ``obj_candidates`` restricts the image of an object; ``fixed_*`` pin
    values outright.  With ``injective`` both maps must be injective.
    """
    counter = counter or NodeCounter("functor search")
    nA = A.n_obj
    order, closes = _constraints(A)
    fixed_objects = dict(fixed_objects or {})
    fixed_morphisms = dict(fixed_morphisms or {})
    cand = []
    for a in range(nA):
        if a in fixed_objects:
            cand.append([fixed_objects[a]])
        elif obj_candidates is not None and a in obj_candidates:
            cand.append(sorted(obj_candidates[a]))
        else:
            cand.append(list(range(B.n_obj)))
    # morphisms whose endpoints are both among the first k objects
    needs = [[] for _ in range(nA)]
    for m in order:
        needs[max(A.src[m], A.tgt[m])].append(m)

    omap = [None] * nA
    mmap = [None] * A.n_mor
    used_obj: set = set()
    used_mor: set = set()

    def assign_objects(k):
        if k == nA:
            for a in range(nA):
                mmap[A.id(a)] = B.id(omap[a])
            yield from assign_morphisms(0)
            return
        for b in cand[k]:
            counter.tick()
            if injective and b in used_obj:
                continue
            omap[k] = b
            if all(B.hom(omap[A.src[m]], omap[A.tgt[m]]) for m in needs[k]):
                used_obj.add(b)
                yield from assign_objects(k + 1)
                used_obj.discard(b)
        omap[k] = None

    def assign_morphisms(i):
        if i == len(order):
            yield make_functor(A, B, omap, mmap, check=False)
            return
        m = order[i]
        hom = B.hom(omap[A.src[m]], omap[A.tgt[m]])
        if m in fixed_morphisms:
            options = [fixed_morphisms[m]] if fixed_morphisms[m] in hom else []
        else:
            options = hom
            for g, f, h in closes[m]:
                if h == m and g != m and f != m:
                    options = [B.compose(mmap[g], mmap[f])]
                    break
        for n in options:
            counter.tick()
            if injective and (n in used_mor or B.is_identity(n)):
                continue
            mmap[m] = n
            if all(B.compose(mmap[g], mmap[f]) == mmap[h] for g, f, h in closes[m]):
                used_mor.add(n)
                yield from assign_morphisms(i + 1)
                used_mor.discard(n)
        mmap[m] = None

    yield from assign_objects(0)


def enumerate_functors(A: FinCategory, B: FinCategory, **kw) -> list:
    """Complete, duplicate-free list of functors A → B in canonical order."""
    return list(iter_functors(A, B, **kw))


def iter_nat_transfs(F: FinFunctor, G: FinFunctor, *, invertible: bool = False,
                     counter: NodeCounter | None = None) -> Iterator[NatTransf]:
    _check_parallel(F, G)
    counter = counter or NodeCounter("transformation search")
    A, B = F.source, F.target
    n = A.n_obj
    # squares checkable once both endpoints have components
    checks = [[] for _ in range(n)]
    for m in A.non_identities():
        checks[max(A.src[m], A.tgt[m])].append(m)
    comps = [None] * n

    def go(k):
        if k == n:
            yield NatTransf(F, G, tuple(comps))
            return
        for c in B.hom(F.omap[k], G.omap[k]):
            counter.tick()
            if invertible and not B.is_iso(c):
                continue
            comps[k] = c
            if all(B.compose(G.mmap[m], comps[A.src[m]]) ==
                   B.compose(comps[A.tgt[m]], F.mmap[m]) for m in checks[k]):
                yield from go(k + 1)
        comps[k] = None

    yield from go(0)


def enumerate_nat_transfs(F: FinFunctor, G: FinFunctor, **kw) -> list:
    return list(iter_nat_transfs(F, G, **kw))


def hom_profile(C: FinCategory, a: int) -> tuple:
    outs = sorted(len(C.hom(a, b)) for b in range(C.n_obj))
    ins = sorted(len(C.hom(b, a)) for b in range(C.n_obj))
    return (len(C.hom(a, a)), tuple(outs), tuple(ins), len(C.isos_from(a)))


def find_isomorphism(A: FinCategory, B: FinCategory, *, cap: int | None = None,
                     fixed_objects: Mapping | None = None) -> FinFunctor | None:
    """Least isomorphism of categories A → B, or None.

    Object bijections are pruned by hom-set cardinality profiles; categories
    with more than ``cap`` objects (default from the budget) are refused.
    """
    if A.n_obj != B.n_obj or A.n_mor != B.n_mor:
        return None
    cap = current_budget().iso_object_cap if cap is None else cap
    if A.n_obj > cap:
        raise SizeBudgetExceeded(
            f"isomorphism search capped at {cap} objects, got {A.n_obj}")
    pb = [hom_profile(B, b) for b in range(B.n_obj)]
    cands = {a: [b for b in range(B.n_obj) if pb[b] == hom_profile(A, a)]
             for a in range(A.n_obj)}
    if any(not c for c in cands.values()):
        return None
    for F in iter_functors(A, B, obj_candidates=cands, injective=True,
                           fixed_objects=fixed_objects):
        return F
    return None


def are_isomorphic(A: FinCategory, B: FinCategory, **kw) -> bool:
    return find_isomorphism(A, B, **kw) is not None
