from itertools import product as iproduct

import pytest

from fin2cat.category import arrow_category, free_iso, identity_functor, terminal_category
from fin2cat.classify import classify_functor
from fin2cat.fixtures import (categories_upto3, fixture_functors, parallel_pairs,
                              relative_adjoint_suite, small_categories)
from fin2cat.limits import (comma_object, equifier, find_iso_over, inserter, inverter,
                            pie_alternate, pie_limit, power, product, pseudolimit_of_arrow,
                            relative_adjoint_verdicts, splitting, strict_pullback)
from fin2cat.oracles import brute_functor_count
from fin2cat.search import enumerate_functors, enumerate_nat_transfs

CATS = categories_upto3()
PAIRS = list(parallel_pairs(2))


def _comma_objects(f, g):
    A, B, C = f.source, g.source, f.target
    return sum(len(C.hom(f.omap[a], g.omap[b])) for a in range(A.n_obj) for b in range(B.n_obj))


def _inserter_objects(f, g):
    return sum(len(f.target.hom(f.omap[a], g.omap[a])) for a in range(f.source.n_obj))


def test_product_of_nothing_is_terminal():
    L = product([])
    assert (L.apex.n_obj, L.apex.n_mor) == (1, 1)


@pytest.mark.parametrize("a,b", [("arrow", "iso"), ("z2", "span"), ("empty", "chain3")])
def test_binary_product(a, b):
    L = product([CATS[a], CATS[b]])
    assert L.verified
    assert L.apex.n_mor == CATS[a].n_mor * CATS[b].n_mor


@pytest.mark.parametrize("e", ["one", "disc2", "arrow", "iso"])
@pytest.mark.parametrize("a", ["arrow", "z2", "idem"])
def test_power_objects_are_functors(a, e):
    assert power(CATS[a], CATS[e]).n_obj == brute_functor_count(CATS[e], CATS[a])


def test_comma_and_inserter_sizes():
    for k, (_, f, g) in enumerate(PAIRS):
        # the universal property is re-verified on a sample only
        check = k % 25 == 0
        assert comma_object(f, g, verify=check).apex.n_obj == _comma_objects(f, g)
        assert inserter(f, g, verify=check).apex.n_obj == _inserter_objects(f, g)


def test_inserter_in_the_wrong_direction_is_empty():
    one, two = terminal_category(), arrow_category()
    f = enumerate_functors(one, two)
    top = next(F for F in f if F.omap == (1,))
    bottom = next(F for F in f if F.omap == (0,))
    L = inserter(top, bottom)
    assert L.is_empty and L.verified
    assert not inserter(bottom, top).is_empty


def test_alternates_agree_on_inserters():
    for _, f, g in PAIRS[:120]:
        L1, L2 = inserter(f, g), pie_alternate("inserter", f, g)
        assert L1.apex.n_obj == L2.apex.n_obj
        assert find_iso_over(L1, L2) is not None


def test_equifier_and_inverter():
    I = identity_functor(CATS["arrow"])
    (t,) = enumerate_nat_transfs(I, I)
    assert equifier(t, t).apex.n_obj == 2
    assert inverter(t).apex.n_obj == 2
    # a non-identity transformation between the two points of 𝟐
    one = terminal_category()
    f, g = sorted(enumerate_functors(one, CATS["arrow"]), key=lambda F: F.omap)
    (u,) = enumerate_nat_transfs(f, g)
    assert inverter(u).is_empty


def test_splitting_of_an_idempotent():
    E = CATS["idem"]
    for e in enumerate_functors(E, E):
        L = splitting(e)
        assert L.verified


def test_strict_pullback_of_projection():
    A, B = CATS["arrow"], CATS["iso"]
    for f in enumerate_functors(A, B):
        L = strict_pullback(f, identity_functor(B))
        assert (L.apex.n_obj, L.apex.n_mor) == (A.n_obj, A.n_mor)


def test_pseudolimit_of_arrow():
    n = 0
    for _, f in fixture_functors(2):
        P = pseudolimit_of_arrow(f)
        A, B = f.source, f.target
        assert P.apex.n_obj == sum(len(B.isos(f.omap[a], b))
                                   for a in range(A.n_obj) for b in range(B.n_obj))
        assert classify_functor(P.p_f, flags=("equivalence",)).equivalence
        n += 1
    assert n > 50


def test_pie_limit_dispatch():
    f = enumerate_functors(CATS["arrow"], CATS["iso"])[0]
    assert pie_limit("comma", f, f).kind == "comma"
    with pytest.raises(ValueError):
        pie_limit("colimit", f)


def test_relative_adjoint_methods_agree():
    suite = relative_adjoint_suite(30, 0)
    assert len(suite) == 30
    verdicts = [relative_adjoint_verdicts(j, g) for _, j, g in suite]
    assert all(len(set(v)) == 1 for v in verdicts)
    assert sum(v[0] for v in verdicts) == 15


def test_ordinary_adjoint_is_relative_to_identity():
    # picking the terminal object of 𝟐 is right adjoint to 𝟐 → 1; the initial one is not
    two, one = CATS["arrow"], terminal_category()
    top = next(F for F in enumerate_functors(one, two) if F.omap == (1,))
    assert relative_adjoint_verdicts(identity_functor(two), top)[0]
    bottom = next(F for F in enumerate_functors(one, two) if F.omap == (0,))
    assert not relative_adjoint_verdicts(identity_functor(two), bottom)[0]


def _evaluation(A, E, e):
    """ev_e: A^E → A, read off the power's object and morphism keys."""
    from fin2cat.category import FinFunctor
    P = power(A, E)
    return FinFunctor(P, A, tuple(om[e] for om, _ in P.okeys),
                      tuple(comps[e] for _, _, comps in P.mkeys), f"ev{e}")


def test_pullback_along_evaluation():
    two, one = CATS["arrow"], terminal_category()
    bottom, top = sorted(enumerate_functors(one, two), key=lambda F: F.omap)
    # 𝟐^𝟐 has objects 0→0, 0→1, 1→1; fibres of evaluation at the source and target
    assert strict_pullback(bottom, _evaluation(two, two, 0)).apex.n_obj == 2
    assert strict_pullback(top, _evaluation(two, two, 1)).apex.n_obj == 2
    assert strict_pullback(bottom, _evaluation(two, two, 1)).apex.n_obj == 1


def test_pullback_needs_an_isofibration():
    from fin2cat.errors import NotAFibration
    from fin2cat.limits import pullback
    iso, one = free_iso(), terminal_category()
    p = enumerate_functors(one, iso)[0]
    # the isomorphism out of p(*) has no lift in 1
    with pytest.raises(NotAFibration):
        pullback(enumerate_functors(one, iso)[1], p)
