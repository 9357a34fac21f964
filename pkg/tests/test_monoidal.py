from itertools import product as iproduct

import pytest
from hypothesis import given, settings, strategies as st

from fin2cat.errors import MonoidalError, NotRelated, PentagonViolation
from fin2cat.monoidal import (coherence_iso, discrete_monoidal,
                              enumerate_strong_monoidal_functors, idempotent_sl,
                              is_three_cocycle, leaves, left_tree, normalize_tree,
                              path_independence_failures, strictify, strong_monoidal_violation,
                              z2_signed, z2_strict)
from fin2cat.oracles import strong_monoidal_brute

STRICT, TWISTED = z2_strict(), z2_signed()
Z3 = discrete_monoidal(["0", "1", "2"], lambda a, b: str((int(a) + int(b)) % 3), "0", "ℤ/3")
MAX = discrete_monoidal(["0", "1"], max, "0", "max")


def _omega(values):
    table = dict(zip(iproduct("eg", repeat=3), values))
    return lambda a, b, c: table[(a, b, c)]


@pytest.mark.parametrize("x,y", [("strict", "strict"), ("strict", "twisted"),
                                 ("twisted", "strict"), ("twisted", "twisted"),
                                 ("z3", "strict"), ("max", "twisted")])
def test_strong_monoidal_count_matches_brute_force(x, y):
    cats = {"strict": STRICT, "twisted": TWISTED, "z3": Z3, "max": MAX}
    X, Y = cats[x], cats[y]
    found = enumerate_strong_monoidal_functors(X, Y)
    assert len(found) == strong_monoidal_brute(X, Y)
    assert all(strong_monoidal_violation(S) is None for S in found)


def test_strict_and_twisted_are_not_equivalent():
    assert len(enumerate_strong_monoidal_functors(STRICT, TWISTED)) == 4
    # a nontrivial cocycle is no coboundary: nothing hits g
    assert all(S.F.omap == (0, 0) for S in enumerate_strong_monoidal_functors(STRICT, TWISTED))
    assert any(S.F.omap == (0, 1) for S in enumerate_strong_monoidal_functors(TWISTED, TWISTED))


def test_pentagon_is_the_cocycle_condition():
    cocycles = 0
    for values in iproduct((1, -1), repeat=8):
        w = _omega(values)
        try:
            z2_signed(w, unit=False)
            valid = True
        except PentagonViolation:
            valid = False
        assert valid == is_three_cocycle(w)
        cocycles += valid
    assert cocycles == 8


def test_unit_needs_normalized_cocycle():
    # a cocycle with a sign at some ω(a, e, b) passes the pentagon but not the triangle
    unnormal = [w for w in map(_omega, iproduct((1, -1), repeat=8))
                if is_three_cocycle(w) and any(w(a, "e", b) == -1 for a in "eg" for b in "eg")]
    assert unnormal
    for w in unnormal:
        z2_signed(w, unit=False)
        with pytest.raises(MonoidalError):
            z2_signed(w, unit=True)


@pytest.mark.parametrize("X", [STRICT, TWISTED, Z3], ids=["strict", "twisted", "z3"])
def test_coherence_is_path_independent(X):
    assert path_independence_failures(X, 4) == []


TREES = st.recursive(st.sampled_from([0, 1, "I"]), lambda sub: st.tuples(sub, sub),
                     max_leaves=6)


@settings(max_examples=80, deadline=None)
@given(TREES)
def test_normal_forms_agree(t):
    n1, m1 = normalize_tree(t, TWISTED, outermost=True)
    n2, m2 = normalize_tree(t, TWISTED, outermost=False)
    assert n1 == n2 and m1 == m2
    assert [x for x in leaves(n1) if x != "I"] == [x for x in leaves(t) if x != "I"]


def test_coherence_iso_needs_equal_words():
    with pytest.raises(NotRelated):
        coherence_iso((0, 1), (1, 0), TWISTED)
    t = left_tree([0, 1, 1])
    assert TWISTED.base.is_identity(coherence_iso(t, t, TWISTED))


@pytest.mark.parametrize("maxlen", [1, 2, 3])
@pytest.mark.parametrize("X", [STRICT, TWISTED], ids=["strict", "twisted"])
def test_strictification(X, maxlen):
    S = strictify(X, maxlen)
    assert all(S.checks.values()), S.checks
    words = sum(X.base.n_obj ** k for k in range(maxlen + 1))
    assert S.Q.n_obj == words
    e = idempotent_sl(S)
    assert e["idempotent"] and e["splits"]


def test_strictify_rejects_empty_words():
    with pytest.raises(ValueError):
        strictify(TWISTED, 0)
