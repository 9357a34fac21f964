import random

import pytest
from hypothesis import given, settings, strategies as st

from fin2cat import sketches as sk
from fin2cat.errors import FuelExhausted, NotACategory
from fin2cat.fixtures import categories_upto3, categories_upto4
from fin2cat.oracles import path_category, random_dag, terminal_objects
from fin2cat.search import are_isomorphic

CAT = sk.doctrine("cat")
TOB = sk.doctrine("tob")


def test_doctrine_sizes():
    assert len(CAT.J) == 11
    assert len(TOB.J) == 16
    assert CAT.ambient is sk.CSK and TOB.ambient is sk.TSK
    assert {g.kind for g in CAT.J} == {"existence", "uniqueness"}


@pytest.mark.parametrize("name", sorted(categories_upto4()))
def test_category_sketches_round_trip(name):
    C = categories_upto4()[name]
    S = sk.sketch_of_category(C)
    assert sk.is_injective_all(S, CAT).ok
    assert are_isomorphic(sk.category_of_sketch(S), C)


def test_graph_without_composites_is_not_injective():
    S = sk.csketch(["0", "1", "2"], {"f": ("0", "1"), "g": ("1", "2")})
    r = sk.is_injective_all(S, CAT)
    assert not r.ok and r.failing_map is not None
    with pytest.raises(NotACategory):
        sk.category_of_sketch(S)


def test_terminal_marking():
    C = categories_upto3()["cospan"]
    (t,) = terminal_objects(C)
    base = sk.sketch_of_category(C)
    assert sk.is_injective_all(sk.tsketch(base, [C.objects[t]]), TOB).ok
    assert not sk.is_injective_all(sk.tsketch(base, []), TOB).ok
    other = next(o for k, o in enumerate(C.objects) if k != t)
    assert not sk.is_injective_all(sk.tsketch(base, [other]), TOB).ok


def test_completion_is_idempotent_on_categories():
    S = sk.sketch_of_category(categories_upto3()["span"])
    done = sk.small_object_argument(S, CAT)
    assert done.productive_steps == 0
    assert done.result.size() == S.size()


def test_loop_exhausts_fuel():
    S = sk.csketch(["0"], {"f": ("0", "0")})
    with pytest.raises(FuelExhausted) as e:
        sk.small_object_argument(S, CAT, fuel=20)
    assert e.value.partial.size() > S.size()
    assert e.value.trace


def test_negative_fuel():
    with pytest.raises(ValueError):
        sk.small_object_argument(sk.csketch(["0"], {}), CAT, fuel=-1)


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_completion_of_a_dag_is_its_path_category(seed):
    vs, es = random_dag(random.Random(seed), 4, 4)
    done = sk.small_object_argument(sk.csketch(vs, es), CAT)
    assert sk.is_injective_all(done.result, CAT).ok
    assert are_isomorphic(sk.category_of_sketch(done.result), path_category(vs, es))
    # the unit keeps every original vertex and edge
    assert set(done.unit.comp["V"]) == set(vs)
    assert set(done.unit.comp["E"]) == set(es)


def test_graph_census_up_to_isomorphism():
    # empty; one vertex with 0, 1 or 2 loops
    assert len(sk.small_graphs(1, 2)) == 4
    # empty; a vertex with or without a loop; two vertices with nothing, a loop or an arrow
    assert len(sk.small_graphs(2, 1)) == 6
    first = next(iter(sk.iter_small_sketches(1, 1, 1)))
    assert first.cat is sk.CSK
