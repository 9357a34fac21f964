"""Named fixture categories, diagrams and suites shared by tests, acceptance and the CLI."""
from __future__ import annotations

import random
from itertools import product as iproduct

from .category import (FinCategory, FinFunctor, arrow_category, discrete_category,
                       empty_category, free_iso, identity_functor, monoid_category, ordinal,
                       parallel_pair, poset_category, product_category, terminal_category)
from .search import enumerate_functors, enumerate_nat_transfs


def _z2() -> FinCategory:
    return monoid_category(["1", "g"], lambda x, y: "1" if x == y else "g", "1", label="ℤ/2")


def _idem() -> FinCategory:
    # {1, e} with e∘e = e
    return monoid_category(["1", "e"], lambda x, y: "e" if "e" in (x, y) else "1", "1",
                           label="idem")


def _preorder(label: str, elems, pairs) -> FinCategory:
    rel = set(pairs) | {(x, x) for x in elems}
    return poset_category(list(elems), lambda x, y: (x, y) in rel, label=label)


def categories_upto3() -> dict:
    """Fixture categories with at most three objects."""
    return {
        "empty": empty_category(),
        "one": terminal_category(),
        "disc2": discrete_category(2),
        "arrow": arrow_category(),
        "iso": free_iso(),
        "pair": parallel_pair(),
        "chain3": ordinal(3),
        "z2": _z2(),
        "idem": _idem(),
        "span": _preorder("span", "m01", [("m", "0"), ("m", "1")]),
        "cospan": _preorder("cospan", "01t", [("0", "t"), ("1", "t")]),
        "iso_arrow": _preorder("iso→", "012", [("0", "1"), ("1", "0"), ("0", "2"), ("1", "2")]),
    }


def categories_upto4() -> dict:
    """Fixture categories with at most four objects."""
    out = categories_upto3()
    out.update({
        "chain4": ordinal(4),
        "square": product_category(arrow_category(), arrow_category()),
        "disc3": discrete_category(3),
        "iso_pair": _preorder("≅≅", "0123", [("0", "1"), ("1", "0"), ("2", "3"), ("3", "2")]),
        "diamond": _preorder("◇", "b01t", [("b", "0"), ("b", "1"), ("b", "t"),
                                           ("0", "t"), ("1", "t")]),
    })
    return out


def small_categories(max_objects: int = 2) -> dict:
    return {k: C for k, C in categories_upto3().items() if C.n_obj <= max_objects}


def fixture_functors(max_objects: int = 3, cats: dict | None = None):
    """Every functor between fixture categories with at most ``max_objects`` objects."""
    cats = cats or {k: C for k, C in categories_upto3().items() if C.n_obj <= max_objects}
    for (na, A), (nb, B) in iproduct(cats.items(), repeat=2):
        for F in enumerate_functors(A, B):
            yield (na, nb), F


def parallel_pairs(max_objects: int = 2):
    """Inserter data: ordered pairs of parallel functors between small fixtures."""
    cats = small_categories(max_objects)
    for (na, A), (nb, B) in iproduct(cats.items(), repeat=2):
        Fs = enumerate_functors(A, B)
        for f, g in iproduct(Fs, repeat=2):
            yield (na, nb), f, g


def parallel_cells(max_objects: int = 2):
    """Equifier data: ordered pairs of parallel natural transformations."""
    cats = small_categories(max_objects)
    for (na, A), (nb, B) in iproduct(cats.items(), repeat=2):
        for f, g in iproduct(enumerate_functors(A, B), repeat=2):
            ts = enumerate_nat_transfs(f, g)
            for a, b in iproduct(ts, repeat=2):
                yield (na, nb), a, b


# ---------------------------------------------------------------------------
# finite posets and cospans for the relative-adjoint suite


def posets() -> dict:
    return {
        "p1": ordinal(1),
        "p2": ordinal(2),
        "p3": ordinal(3),
        "V": _preorder("V", "m01", [("m", "0"), ("m", "1")]),
        "Λ": _preorder("Λ", "01t", [("0", "t"), ("1", "t")]),
        "d2": discrete_category(2),
        "◇": _preorder("◇", "b01t", [("b", "0"), ("b", "1"), ("b", "t"),
                                     ("0", "t"), ("1", "t")]),
    }


def relative_adjoint_suite(n: int = 30, seed: int = 0, verdict=None) -> list:
    """``n`` cospans j: A → C ← B: g of finite posets, half with a relative left adjoint.

    Each entry is (name, j, g).  The identity-j and identity-g families are
    always included; the rest is a seeded sample.  ``verdict`` decides the
    positive/negative split and defaults to the direct search.
    """
    from .limits import relative_adjoint_verdicts
    verdict = verdict or (lambda j, g: relative_adjoint_verdicts(j, g)[0])
    P = posets()
    pos, neg = [], []
    for (nc, C), (na, A), (nb, B) in iproduct(P.items(), repeat=3):
        if A.n_obj * B.n_obj * C.n_obj > 27:
            continue
        for j in enumerate_functors(A, C):
            for g in enumerate_functors(B, C):
                name = f"{na}→{nc}←{nb} j{j.omap} g{g.omap}"
                (pos if verdict(j, g) else neg).append((name, j, g))
    rng = random.Random(seed)
    rng.shuffle(pos)
    rng.shuffle(neg)
    half = n // 2
    picked = pos[:half] + neg[:n - half]
    # always include the two textbook families
    C = P["◇"]
    picked[0] = ("identity g on ◇", identity_functor(C), identity_functor(C))
    return picked
