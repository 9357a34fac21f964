"""Independent reference computations used to cross-check the engine.

Everything here is deliberately naive: plain loops over explicit data, no
shared search code beyond the category container itself.
"""
from __future__ import annotations

import random
from itertools import product as iproduct

from .category import FinCategory, build_category


def path_category(vertices, edges) -> FinCategory:
    """Free category on a finite acyclic graph, by listing every path.

    ``edges`` maps names to (source, target); a path is (start, tuple of edges).
    """
    vertices = list(vertices)
    out_edges = {v: [e for e, (s, _) in sorted(edges.items()) if s == v] for v in vertices}
    paths = []
    frontier = [(v, ()) for v in vertices]
    while frontier:
        paths.extend(frontier)
        nxt = []
        for v, es in frontier:
            end = edges[es[-1]][1] if es else v
            for e in out_edges[end]:
                nxt.append((v, es + (e,)))
        if len(paths) > 10_000:
            raise ValueError("graph has a cycle or too many paths")
        frontier = nxt

    def end(p):
        return edges[p[1][-1]][1] if p[1] else p[0]

    return build_category(vertices, paths, lambda p: p[0], end, lambda v: (v, ()),
                          lambda g, f: (f[0], f[1] + g[1]), label="paths",
                          mname=lambda p: "·".join(p[1]) or f"id_{p[0]}")


def random_dag(rng: random.Random, max_vertices: int = 5, max_edges: int = 6):
    """A random acyclic multigraph: edges only go from lower to higher vertex."""
    n = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = rng.randint(0, max_edges) if pairs else 0
    edges = {}
    for k in range(m):
        i, j = rng.choice(pairs)
        edges[f"e{k}"] = (vs[i], vs[j])
    return vs, edges


def brute_functor_count(A: FinCategory, B: FinCategory) -> int:
    """Count functors by trying every object map and every morphism map."""
    n = 0
    for om in iproduct(range(B.n_obj), repeat=A.n_obj):
        opts = [B.hom(om[A.src[m]], om[A.tgt[m]]) for m in range(A.n_mor)]
        for mm in iproduct(*opts):
            if any(mm[A.id(a)] != B.id(om[a]) for a in range(A.n_obj)):
                continue
            if all(B.compose(mm[g], mm[f]) == mm[h] for (g, f), h in A.table.items()):
                n += 1
    return n


def brute_isomorphic(A: FinCategory, B: FinCategory) -> bool:
    """Isomorphism of categories by trying every pair of bijections."""
    from itertools import permutations
    if (A.n_obj, A.n_mor) != (B.n_obj, B.n_mor):
        return False
    for om in permutations(range(B.n_obj)):
        cand = [[n for n in B.hom(om[A.src[m]], om[A.tgt[m]])] for m in range(A.n_mor)]
        for mm in iproduct(*cand):
            if len(set(mm)) != len(mm):
                continue
            if all(B.table.get((mm[g], mm[f])) == mm[h] for (g, f), h in A.table.items()):
                return True
    return False


def terminal_objects(C: FinCategory) -> set:
    return {t for t in range(C.n_obj)
            if all(len(C.hom(x, t)) == 1 for x in range(C.n_obj))}


def strong_monoidal_brute(X, Y) -> int:
    """Count strong monoidal functors between monoidal categories by raw loops.

    Object maps, morphism maps and coherence cells are all tried blindly;
    every axiom is re-checked from the tables.
    """
    C, D = X.base, Y.base
    n = 0
    for F in _all_functors(C, D):
        om, mm = F
        pairs = list(iproduct(range(C.n_obj), repeat=2))
        choices = [[m for m in D.hom(om[X.t(a, b)], Y.t(om[a], om[b])) if D.is_iso(m)]
                   for a, b in pairs]
        units = [None] if X.unit is None else \
            [m for m in D.hom(om[X.unit], Y.unit) if D.is_iso(m)]
        for cells in iproduct(*choices):
            coh = dict(zip(pairs, cells))
            for u in units:
                if _strong_ok(X, Y, om, mm, coh, u):
                    n += 1
    return n


def _all_functors(C, D):
    for om in iproduct(range(D.n_obj), repeat=C.n_obj):
        opts = [D.hom(om[C.src[m]], om[C.tgt[m]]) for m in range(C.n_mor)]
        for mm in iproduct(*opts):
            if all(mm[C.id(a)] == D.id(om[a]) for a in range(C.n_obj)) and \
                    all(D.compose(mm[g], mm[f]) == mm[h] for (g, f), h in C.table.items()):
                yield om, mm


def _strong_ok(X, Y, om, mm, coh, u) -> bool:
    C, D = X.base, Y.base
    c = D.compose
    for f, g in iproduct(range(C.n_mor), repeat=2):
        a, b, a2, b2 = C.src[f], C.src[g], C.tgt[f], C.tgt[g]
        if c(coh[(a2, b2)], mm[X.tm(f, g)]) != c(Y.tm(mm[f], mm[g]), coh[(a, b)]):
            return False
    for a, b, k in iproduct(range(C.n_obj), repeat=3):
        left = c(Y.assoc[(om[a], om[b], om[k])],
                 c(Y.tm(coh[(a, b)], D.id(om[k])), coh[(X.t(a, b), k)]))
        right = c(Y.tm(D.id(om[a]), coh[(b, k)]), c(coh[(a, X.t(b, k))], mm[X.assoc[(a, b, k)]]))
        if left != right:
            return False
    if u is not None:
        for a in range(C.n_obj):
            if c(Y.lunit[om[a]], c(Y.tm(u, D.id(om[a])), coh[(X.unit, a)])) != mm[X.lunit[a]]:
                return False
            if c(Y.runit[om[a]], c(Y.tm(D.id(om[a]), u), coh[(a, X.unit)])) != mm[X.runit[a]]:
                return False
    return True
