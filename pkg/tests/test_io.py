import json

import pytest

from fin2cat import io
from fin2cat import sketches as sk
from fin2cat import twocat as tc
from fin2cat.fixtures import categories_upto4, fixture_functors
from fin2cat.monoidal import z2_signed, z2_strict
from fin2cat.search import enumerate_nat_transfs


def _again(doc):
    # through text, so only JSON-representable content survives
    return json.loads(io.dumps(doc))


@pytest.mark.parametrize("name", sorted(categories_upto4()))
def test_category_round_trip(name):
    C = categories_upto4()[name]
    D = io.category_from_json(_again(io.category_to_json(C)))
    assert (D.objects, D.morphisms, D.table) == (C.objects, C.morphisms, C.table)


def test_functor_and_nat_round_trip():
    for k, (_, F) in enumerate(fixture_functors(2)):
        if k % 7:
            continue
        G = io.functor_from_json(_again(io.functor_to_json(F)))
        assert (G.omap, G.mmap) == (F.omap, F.mmap)
        for t in enumerate_nat_transfs(F, F)[:2]:
            u = io.nat_from_json(_again(io.nat_to_json(t)))
            assert u.components == t.components


@pytest.mark.parametrize("name", ["arrow", "span", "z2", "diamond"])
def test_sketch_round_trip(name):
    S = sk.sketch_of_category(categories_upto4()[name])
    for T in (S, sk.tsketch(S, [S.elems["V"][0]])):
        U = io.sketch_from_json(_again(io.sketch_to_json(T)))
        assert io.sketch_to_json(U) == io.sketch_to_json(T)


def test_doctrine_round_trip():
    D = sk.doctrine("cat")
    E = io.doctrine_from_json(_again(io.doctrine_to_json(D)))
    assert [g.name for g in E.J] == [g.name for g in D.J]
    S = sk.csketch(["0", "1", "2"], {"f": ("0", "1"), "g": ("1", "2")})
    assert sk.is_injective_all(S, E).ok == sk.is_injective_all(S, D).ok


@pytest.mark.parametrize("name", ["D1", "I2", "Adj", "RE"])
def test_presentation_round_trip(name):
    P = tc.standard_presentation(name)
    Q = io.presentation_from_json(_again(io.presentation_to_json(P)))
    assert Q == P


def test_monoidal_round_trip():
    for X in (z2_strict(), z2_signed()):
        Y = io.monoidal_from_json(_again(io.monoidal_to_json(X)))
        assert Y.assoc == X.assoc and Y.tensor.mmap == X.tensor.mmap


def test_missing_keys_are_format_errors():
    with pytest.raises(io.FormatError):
        io.category_from_json({"objects": []})
    with pytest.raises(io.FormatError):
        io.sketch_from_json({"level": "xsk", "base": {}})


def test_relative_paths(fixtures_dir):
    doc = io.read_json(fixtures_dir / "two-to-two.json")
    A = io.category_from_json(doc["source"], fixtures_dir)
    assert A.n_mor == 3


def test_dumps_is_canonical():
    assert io.dumps({"b": 1, "a": "ℤ"}) == '{\n  "a": "ℤ",\n  "b": 1\n}\n'
