import random

import pytest
from hypothesis import given, settings, strategies as st

from fin2cat.category import (arrow_category, discrete_category, free_iso, opposite, ordinal,
                              product_category, validate_category)
from fin2cat.errors import (AssociativityViolation, IdentityViolation, MalformedTable,
                            NonComposablePair)
from fin2cat.fixtures import categories_upto3
from fin2cat.oracles import path_category, random_dag


def _z2_table(gg: str):
    # one object, morphisms id and g, with g∘g := gg
    return dict(objects=["*"], morphisms=[("id", "*", "*"), ("g", "*", "*")],
                identities={"*": "id"},
                compose=[("id", "id", "id"), ("id", "g", "g"), ("g", "id", "g"), ("g", "g", gg)])


def test_two_element_monoids():
    assert validate_category(**_z2_table("id")).n_mor == 2
    assert validate_category(**_z2_table("g")).is_identity(0)


def test_missing_composite():
    t = _z2_table("id")
    t["compose"] = t["compose"][:-1]
    with pytest.raises(NonComposablePair):
        validate_category(**t)


def test_identity_law_is_checked():
    t = _z2_table("id")
    t["compose"][1] = ("id", "g", "id")
    with pytest.raises(IdentityViolation):
        validate_category(**t)


def test_associativity_is_checked():
    # three endomorphisms with a non-associative product
    ms = ["id", "a", "b"]
    prod = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"}
    comp = [(g, f, f if g == "id" else g if f == "id" else prod[(g, f)]) for g in ms for f in ms]
    with pytest.raises(AssociativityViolation):
        validate_category(["*"], [(m, "*", "*") for m in ms], {"*": "id"}, comp)


def test_unknown_endpoint():
    with pytest.raises(MalformedTable):
        validate_category(["0"], [("id", "0", "0"), ("f", "0", "1")], {"0": "id"}, [])


def test_hom_and_inverse():
    I = free_iso()
    isos = [m for m in range(I.n_mor) if not I.is_identity(m)]
    assert len(isos) == 2
    f = isos[0]
    assert I.compose(I.inverse(f), f) == I.id(I.src[f])
    A = arrow_category()
    u = A.mor("u")
    assert not A.is_iso(u)
    assert not A.hom(A.tgt[u], A.src[u])


def test_product_sizes():
    cats = categories_upto3()
    for a in ("arrow", "iso", "z2", "span"):
        for b in ("one", "disc2", "chain3"):
            P = product_category(cats[a], cats[b])
            assert P.n_obj == cats[a].n_obj * cats[b].n_obj
            assert P.n_mor == cats[a].n_mor * cats[b].n_mor


def test_opposite_is_involutive():
    for C in categories_upto3().values():
        O = opposite(opposite(C))
        assert (O.n_obj, O.n_mor) == (C.n_obj, C.n_mor)
        assert O.table == C.table


def test_ordinal_is_a_chain():
    C = ordinal(4)
    assert C.n_mor == 10
    assert all(len(C.hom(i, j)) == (1 if i <= j else 0) for i in range(4) for j in range(4))


def test_discrete():
    assert discrete_category(3).n_mor == 3


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_path_categories_validate(seed):
    vs, es = random_dag(random.Random(seed), 4, 5)
    C = path_category(vs, es)
    # path categories of DAGs: identities are the only endomorphisms
    assert all(len(C.hom(a, a)) == 1 for a in range(C.n_obj))
    for (g, f), h in C.table.items():
        assert C.src[h] == C.src[f] and C.tgt[h] == C.tgt[g]
