from itertools import product as iproduct

import pytest

from fin2cat.category import compose_functors, identity_functor
from fin2cat.classify import (classify_functor, find_equivalence_inverse, is_fibration_comma,
                              is_fibration_lifts)
from fin2cat.fixtures import fixture_functors

FUNCTORS = [F for _, F in fixture_functors(3)]


def _hom_map(F, a, b):
    return [F.mmap[u] for u in F.source.hom(a, b)]


def _faithful(F):
    A = F.source
    return all(len(set(_hom_map(F, a, b))) == len(A.hom(a, b))
               for a, b in iproduct(range(A.n_obj), repeat=2))


def _full(F):
    A, B = F.source, F.target
    return all(set(_hom_map(F, a, b)) == set(B.hom(F.omap[a], F.omap[b]))
               for a, b in iproduct(range(A.n_obj), repeat=2))


def _ess_surj(F):
    B = F.target
    return all(any(B.isos(F.omap[a], b) for a in range(F.source.n_obj)) for b in range(B.n_obj))


def _isofibration(F):
    # every iso out of F(a) lifts to an iso out of a
    A, B = F.source, F.target
    for a in range(A.n_obj):
        for b in range(B.n_obj):
            for beta in B.isos(F.omap[a], b):
                if not any(F.mmap[al] == beta for a2 in range(A.n_obj) for al in A.isos(a, a2)):
                    return False
    return True


def test_fixture_family_is_large():
    assert len(FUNCTORS) == 547


def test_flags_against_definitions():
    for F in FUNCTORS:
        c = classify_functor(F)
        assert c.faithful == _faithful(F)
        assert c.full == _full(F)
        assert c.fully_faithful == (c.full and c.faithful)
        assert c.isofibration == _isofibration(F)
        assert c.equivalence == (c.fully_faithful and _ess_surj(F))
        if c.isomorphism:
            assert c.surjective_equivalence and c.discrete_isofibration
        if c.surjective_equivalence:
            assert c.equivalence and len(set(F.omap)) == F.target.n_obj


def test_equivalence_inverse_is_an_inverse_up_to_iso():
    for F in FUNCTORS:
        adj = find_equivalence_inverse(F)
        assert (adj is not None) == classify_functor(F, flags=("equivalence",)).equivalence
        if adj is None:
            continue
        GF = compose_functors(adj.G, F)
        FG = compose_functors(F, adj.G)
        assert adj.unit.source == identity_functor(F.source) and adj.unit.target == GF
        assert adj.counit.source == FG and adj.counit.target == identity_functor(F.target)
        assert all(F.source.is_iso(m) for m in adj.unit.components)
        assert all(F.target.is_iso(m) for m in adj.counit.components)


def test_two_fibration_tests_agree():
    pos = 0
    for F in FUNCTORS:
        ok, _ = is_fibration_lifts(F)
        assert ok == is_fibration_comma(F)
        pos += ok
    assert 0 < pos < len(FUNCTORS)


@pytest.mark.parametrize("flag", ["faithful", "equivalence", "fibration"])
def test_single_flag_requests(flag):
    F = FUNCTORS[7]
    assert getattr(classify_functor(F, flags=(flag,)), flag) == \
        getattr(classify_functor(F), flag)
