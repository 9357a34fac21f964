import random

import pytest
from hypothesis import given, settings, strategies as st

from fin2cat.budget import NodeCounter
from fin2cat.category import free_iso, functor_violation
from fin2cat.errors import SizeBudgetExceeded
from fin2cat.fixtures import categories_upto3, categories_upto4
from fin2cat.oracles import brute_functor_count, brute_isomorphic, path_category, random_dag
from fin2cat.search import are_isomorphic, enumerate_functors, enumerate_nat_transfs

CATS = categories_upto3()
SMALL = {k: C for k, C in CATS.items() if C.n_mor <= 5}


@pytest.mark.parametrize("a", sorted(SMALL))
@pytest.mark.parametrize("b", sorted(SMALL))
def test_functor_count_matches_brute_force(a, b):
    A, B = SMALL[a], SMALL[b]
    Fs = enumerate_functors(A, B)
    assert len(Fs) == brute_functor_count(A, B)
    assert len({(F.omap, F.mmap) for F in Fs}) == len(Fs)
    for F in Fs:
        assert functor_violation(A, B, F.omap, F.mmap) is None


def test_composites_that_are_identities_constrain_search():
    # i⁻¹∘i = id forces F(i⁻¹) = F(i)⁻¹; ℤ/2 has two choices, the free iso four
    assert len(enumerate_functors(free_iso(), CATS["z2"])) == 2
    assert len(enumerate_functors(free_iso(), free_iso())) == 4


def test_idempotent_endomorphisms():
    E = CATS["idem"]
    assert len(enumerate_functors(E, E)) == brute_functor_count(E, E)


def test_search_budget():
    A = categories_upto4()["chain4"]
    with pytest.raises(SizeBudgetExceeded):
        enumerate_functors(A, A, counter=NodeCounter("test", 3))


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_functors_out_of_dag_paths(seed):
    rng = random.Random(seed)
    A = path_category(*random_dag(rng, 3, 3))
    B = rng.choice(list(SMALL.values()))
    assert len(enumerate_functors(A, B)) == brute_functor_count(A, B)


@pytest.mark.parametrize("a", sorted(CATS))
@pytest.mark.parametrize("b", sorted(CATS))
def test_isomorphism_matches_brute_force(a, b):
    A, B = CATS[a], CATS[b]
    if A.n_mor > 6 or B.n_mor > 6:
        pytest.skip("brute force too slow")
    assert are_isomorphic(A, B) == brute_isomorphic(A, B)


def test_nat_transfs_between_identity_functors():
    from fin2cat.category import identity_functor
    for name in ("arrow", "z2", "idem"):
        C = CATS[name]
        ts = enumerate_nat_transfs(identity_functor(C), identity_functor(C))
        # natural endo-transformations of the identity form the centre
        centre = [m for m in range(C.n_mor) if C.src[m] == C.tgt[m]
                  and all(C.compose(m, f) == C.compose(f, m) for f in range(C.n_mor)
                          if C.src[f] == C.tgt[f] == C.src[m])]
        if C.n_obj == 1:
            assert len(ts) == len(centre)
        assert ts
