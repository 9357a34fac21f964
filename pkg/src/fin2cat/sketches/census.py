"""Exhaustive enumeration of small category sketches up to isomorphism.

Graphs are enumerated up to isomorphism; for each graph the triangle and
identity markings (multisets, since a marking function need not be
injective) are reduced to one representative per orbit of the graph's
automorphism group.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement as cwr
from itertools import permutations, product
from typing import Iterator

from .core import SketchObject
from .levels import CSK


def small_graphs(max_vertices: int, max_edges: int) -> list:
    """(n, edges) with edges a sorted tuple of (s, t) pairs, one per iso class."""
    out = []
    for n in range(max_vertices + 1):
        pairs = [(s, t) for s in range(n) for t in range(n)]
        perms = list(permutations(range(n)))
        seen = set()
        for k in range(max_edges + 1):
            for es in cwr(pairs, k):
                can = min(tuple(sorted((p[s], p[t]) for s, t in es)) for p in perms)
                if can not in seen:
                    seen.add(can)
                    out.append((n, can))
    return out


def graph_automorphisms(n: int, edges: tuple) -> list:
    """Edge permutations induced by automorphisms (vertex perm plus parallel-edge perm)."""
    out = []
    for p in permutations(range(n)):
        img = [(p[s], p[t]) for s, t in edges]
        if sorted(img) != list(edges):
            continue
        choices = [[j for j, e in enumerate(edges) if e == img[i]] for i in range(len(edges))]
        for ch in product(*choices):
            if len(set(ch)) == len(ch):
                out.append(ch)
    return out


class _Builder:
    """Precomputed faces for one graph, so each marking costs two dict builds."""

    def __init__(self, n, edges, tris, loops):
        self.vs = tuple(str(v) for v in range(n))
        self.names = tuple(f"e{i}" for i in range(len(edges)))
        self.vfaces = {v: () for v in self.vs}
        self.efaces = {self.names[i]: (str(s), str(t)) for i, (s, t) in enumerate(edges)}
        self.tface = [(str(edges[f][0]), str(edges[f][1]), str(edges[g][1]),
                       self.names[f], self.names[g], self.names[h]) for f, g, h in tris]
        self.lface = [(str(edges[e][0]), self.names[e]) for e in loops]

    def __call__(self, T, L) -> SketchObject:
        tm = _marks("t", len(T))
        im = _marks("i", len(L))
        return SketchObject(CSK, {"V": self.vs, "E": self.names, "T": tm, "I": im},
                            {"V": self.vfaces, "E": self.efaces,
                             "T": {m: self.tface[x] for m, x in zip(tm, T)},
                             "I": {m: self.lface[x] for m, x in zip(im, L)}})


@lru_cache(maxsize=None)
def _marks(prefix: str, n: int) -> tuple:
    return tuple(f"{prefix}{k}" for k in range(n))


def iter_small_sketches(max_vertices: int = 3, max_edges: int = 3,
                        max_marks: int = 4) -> Iterator[SketchObject]:
    """Every category sketch within the bounds, once per isomorphism class."""
    for n, edges in small_graphs(max_vertices, max_edges):
        m = len(edges)
        tris = [(f, g, h) for f in range(m) for g in range(m) for h in range(m)
                if edges[f][1] == edges[g][0] and edges[h] == (edges[f][0], edges[g][1])]
        loops = [i for i in range(m) if edges[i][0] == edges[i][1]]
        auts = graph_automorphisms(n, edges)
        tidx = {x: i for i, x in enumerate(tris)}
        lidx = {e: i for i, e in enumerate(loops)}
        gt = [[tidx[(ch[a], ch[b], ch[c])] for a, b, c in tris] for ch in auts]
        gl = [[lidx[ch[e]] for e in loops] for ch in auts]
        build = _Builder(n, edges, tris, loops)
        for k in range(max_marks + 1):
            for T in cwr(range(len(tris)), k):
                stab = []
                for gi, row in enumerate(gt):
                    im = tuple(sorted(row[x] for x in T))
                    if im < T:
                        break
                    if im == T:
                        stab.append(gi)
                else:
                    for l in range(max_marks + 1):
                        for L in cwr(range(len(loops)), l):
                            if all(tuple(sorted(gl[gi][x] for x in L)) >= L for gi in stab):
                                yield build(T, L)
