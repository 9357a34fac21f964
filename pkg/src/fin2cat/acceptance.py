"""The ten acceptance checks, each exhaustive over its finite instance family.

Every check returns a ``CheckResult`` with the instance count, the number of
disagreements, the first failing instance (if any) and the wall time.  A
check passes when there are no disagreements and it ran within its target.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import chain, combinations
from itertools import product as iproduct

from .category import FinFunctor, identity_functor, pair_functor
from .classify import _isofib, classify_functor, is_discrete_isofibration_rf
from .classify import is_fibration_comma, is_fibration_lifts
from .errors import NotACategory
from .fixtures import (categories_upto3, categories_upto4, fixture_functors, parallel_cells,
                       parallel_pairs, relative_adjoint_suite, small_categories)
from .limits import (find_iso_over, pie_alternate, pie_limit, pseudolimit_of_arrow,
                     relative_adjoint_verdicts)
from .monoidal import (idempotent_sl, path_independence_failures, strictify, z2_signed,
                       z2_strict)
from .oracles import path_category, random_dag, terminal_objects
from .search import are_isomorphic, enumerate_functors
from . import sketches as sk
from . import twocat as tc


@dataclass
class CheckResult:
    number: int
    name: str
    anchor: str
    instances: int = 0
    failures: int = 0
    first_failure: str | None = None
    seconds: float = 0.0
    target: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def within_time(self) -> bool:
        return self.seconds < self.target

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.instances > 0 and self.within_time

    def fail(self, what: str) -> None:
        self.failures += 1
        if self.first_failure is None:
            self.first_failure = what

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" first failure: {self.first_failure}" if self.first_failure else ""
        slow = "" if self.within_time else " (over time target)"
        return (f"[{status}] {self.number:2d} {self.name}: {self.instances} instances, "
                f"{self.failures} disagreements, {self.seconds:.1f}s / {self.target:.0f}s"
                f"{slow}{extra}")

    def to_json(self) -> dict:
        return {"number": self.number, "name": self.name, "anchor": self.anchor,
                "status": "pass" if self.ok else "fail", "instances": self.instances,
                "failures": self.failures, "first_failure": self.first_failure,
                "target_seconds": self.target, "notes": self.notes}


def _timed(number, name, anchor, target):
    def deco(fn):
        def run(**kw) -> CheckResult:
            r = CheckResult(number, name, anchor, target=target)
            t0 = time.perf_counter()
            fn(r, **kw)
            r.seconds = time.perf_counter() - t0
            return r
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        run.number = number
        run.check_name = name
        run.__wrapped__ = fn
        return run
    return deco


def _is_category(S) -> bool:
    try:
        sk.category_of_sketch(S)
        return True
    except NotACategory:
        return False


# ---------------------------------------------------------------------------


@_timed(1, "cat doctrine characterization", "Cat ≃ Inj(J)", 60)
def check_cat_doctrine(r: CheckResult, max_vertices=3, max_edges=3, max_marks=4):
    J = sk.doctrine("cat")
    cats = 0
    for S in sk.iter_small_sketches(max_vertices, max_edges, max_marks):
        r.instances += 1
        inj = sk.is_injective_all(S, J).ok
        c = _is_category(S)
        cats += c
        if inj != c:
            r.fail(f"{S.label or S!r}: injective={inj}, category={c}")
    r.notes["categories"] = cats


def _drop_one_triangle(S):
    """The category sketch with its last triangle marking removed, or None."""
    tris = sk.levels.triangles_of(S)
    if not tris:
        return None
    last = sorted(tris)[-1]
    edges = sk.levels.edges_of(S)
    keep = {m: v for m, v in tris.items() if m != last}
    return sk.csketch(S.elems["V"], edges, keep, sk.levels.identities_of(S),
                      label=f"{S.label} minus {last}")


@_timed(2, "terminal-object doctrine characterization",
        "any object isomorphic to a terminal object is again terminal", 120)
def check_tob_doctrine(r: CheckResult):
    J = sk.doctrine("tob")
    for name, C in categories_upto4().items():
        full = sk.sketch_of_category(C)
        term = {C.objects[t] for t in terminal_objects(C)}
        bases = [(full, True)]
        cut = _drop_one_triangle(full)
        if cut is not None:
            bases.append((cut, _is_category(cut)))
        verts = list(C.objects)
        subsets = chain.from_iterable(combinations(verts, k) for k in range(len(verts) + 1))
        for marked in subsets:
            for base, is_cat in bases:
                S = sk.tsketch(base, list(marked))
                r.instances += 1
                inj = sk.is_injective_all(S, J).ok
                expect = is_cat and bool(marked) and set(marked) == term
                if inj != expect:
                    r.fail(f"{name} {base.label} marked {marked}: injective={inj}")


@_timed(3, "free categories on DAGs by the small object argument",
        "using Quillen's small object argument", 30)
def check_soa_dags(r: CheckResult, n=20, seed=0):
    rng = random.Random(seed)
    J = sk.doctrine("cat")
    for k in range(n):
        vs, es = random_dag(rng)
        G = sk.csketch(vs, es, label=f"dag{k}")
        done = sk.small_object_argument(G, J)
        r.instances += 1
        got = sk.category_of_sketch(done.result)
        want = path_category(vs, es)
        if not are_isomorphic(got, want):
            r.fail(f"dag{k} {es}: {got.n_mor} morphisms, paths {want.n_mor}")


@_timed(4, "pseudolimit projections and the R_f criterion",
        "p_f is a surjective equivalence with section s_f", 60)
def check_pseudolimit(r: CheckResult):
    for (na, nb), F in fixture_functors(3):
        r.instances += 1
        tag = f"{na}→{nb} {F.omap}/{F.mmap}"
        P = pseudolimit_of_arrow(F, verify=False, check_props=False)
        cls = classify_functor(P.p_f, flags=("surjective_equivalence",), cross_check=False)
        if not cls.surjective_equivalence:
            r.fail(f"{tag}: p_f not a surjective equivalence")
            continue
        pq = pair_functor(P.p_f, P.q_f)
        if not _isofib(pq, True)[0]:
            r.fail(f"{tag}: ⟨p_f, q_f⟩ not a discrete isofibration")
            continue
        for G in (F, pq):
            if is_discrete_isofibration_rf(G) != _isofib(G, True)[0]:
                r.fail(f"{tag}: R_f criterion disagrees with the lift search")
                break


@_timed(5, "span round trips and the essential image",
        "fully faithful on 1-cells and on 2-cells", 120)
def check_spans(r: CheckResult):
    # arrows: invert after embed is the identity
    for (na, nb), F in fixture_functors(3):
        r.instances += 1
        P = pseudolimit_of_arrow(F, verify=False, check_props=False)
        if tc.span_invert(tc.Span(P.p_f, P.q_f), P.s_f) != F:
            r.fail(f"invert∘embed ≠ 1 on {na}→{nb} {F.omap}")
    # spans over categories with at most two objects
    small = small_categories(2)
    embedded = {}
    for (na, A), (nb, B) in iproduct(small.items(), repeat=2):
        embedded[(na, nb)] = [(f, tc.span_embed(f)) for f in enumerate_functors(A, B)]
    apexes = dict(categories_upto3())
    for (na, nb), lst in embedded.items():
        for k, (_, sp) in enumerate(lst):
            apexes[f"P({na}→{nb})#{k}"] = sp.apex
    seen = 0
    for (na, A), (nb, B) in iproduct(small.items(), repeat=2):
        for rn, R in apexes.items():
            if R.n_obj > 4:
                continue
            for a in enumerate_functors(R, A):
                for b in enumerate_functors(R, B):
                    sp = tc.Span(a, b)
                    seen += 1
                    r.instances += 1
                    img = tc.check_span_image(sp)
                    hit = any(tc.span_isomorphisms(sp, e) for _, e in embedded[(na, nb)])
                    if img != hit:
                        r.fail(f"span {rn}→{na},{nb}: image test {img}, search {hit}")
                        continue
                    if img:
                        back = tc.span_embed(tc.span_invert(sp))
                        if not tc.span_isomorphisms(sp, back):
                            r.fail(f"embed∘invert not ≅ 1 on span {rn}→{na},{nb}")
    r.notes["spans"] = seen


def _pointwise_equivalences(F, G):
    out = []
    for t in tc.enumerate_pseudonaturals(F, G):
        if all(classify_functor(t.comp[x], flags=("equivalence",),
                                cross_check=False).equivalence for x in t.comp):
            out.append(t)
    return out


def mate_instances(n=20, seed=0) -> list:
    """Seeded pointwise equivalences over D1 and 𝟐_𝒜 with 𝒜 discrete on two objects."""
    from .category import discrete_category
    cats = categories_upto4()
    pool = [cats[k] for k in ("one", "iso", "arrow", "disc2", "iso_arrow", "iso_pair")]
    rng = random.Random(seed)
    D1 = tc.standard_presentation("D1")
    TA = tc.standard_presentation("Two_A", discrete_category(2))
    out = []
    tries = 0
    while len(out) < n and tries < 2000:
        tries += 1
        P = D1 if len(out) % 2 == 0 else TA
        X0, X1 = rng.choice(pool), rng.choice(pool)
        fs = enumerate_functors(X0, X1)
        if not fs:
            continue
        Ffs = {c: rng.choice(fs) for c in P.one_cells}
        F = tc.TwoFunctor(P, {"0": X0, "1": X1}, Ffs, {}, "F")
        # a target equivalent to the source, objectwise
        Y0 = rng.choice([Y for Y in pool if _equivalent(X0, Y)])
        Y1 = rng.choice([Y for Y in pool if _equivalent(X1, Y)])
        gs = enumerate_functors(Y0, Y1)
        if not gs:
            continue
        G = tc.TwoFunctor(P, {"0": Y0, "1": Y1}, {c: rng.choice(gs) for c in P.one_cells},
                          {}, "G")
        ts = _pointwise_equivalences(F, G)
        if ts:
            out.append((P.name, rng.choice(ts)))
    return out


def _equivalent(X, Y) -> bool:
    return any(classify_functor(F, flags=("equivalence",), cross_check=False).equivalence
               for F in enumerate_functors(X, Y))


@_timed(6, "inverting pointwise equivalences by mates", "Taking its mate", 30)
def check_mates(r: CheckResult, n=20, seed=0):
    inst = mate_instances(n, seed)
    r.notes["presentations"] = sorted({p for p, _ in inst})
    for k, (pname, t) in enumerate(inst):
        r.instances += 1
        m = tc.mate_inverse(t)
        bad = tc.pseudonat_violation(m.u) or tc.modification_violation(m.eta) or \
            tc.modification_violation(m.eps)
        if not bad:
            for x in t.comp:
                if not tc._triangles(t.comp[x], m.u.comp[x], m.eta.comp[x], m.eps.comp[x]):
                    bad = f"triangle equations at {x}"
        if bad:
            r.fail(f"instance {k} over {pname}: {bad}")
    if len(inst) < n:
        r.fail(f"only {len(inst)} of {n} instances could be generated")


@_timed(7, "inserters and equifiers as pullbacks", "pullbacks of discrete isofibrations", 30)
def check_pie_alternates(r: CheckResult):
    for (na, nb), f, g in parallel_pairs(2):
        r.instances += 1
        L1 = pie_limit("inserter", f, g, verify=False)
        L2 = pie_alternate("inserter", f, g, verify=False)
        if find_iso_over(L1, L2) is None:
            r.fail(f"inserter {na}⇉{nb} {f.omap}/{g.omap}")
    for (na, nb), a, b in parallel_cells(2):
        r.instances += 1
        L1 = pie_limit("equifier", a, b, verify=False)
        L2 = pie_alternate("equifier", a, b, verify=False)
        if find_iso_over(L1, L2) is None:
            r.fail(f"equifier over {na}⇉{nb} {a.components}/{b.components}")


@_timed(8, "fibrations: cartesian lifts versus the comma adjoint",
        "has a right adjoint with identity counit", 60)
def check_fibrations(r: CheckResult):
    pos = 0
    for (na, nb), F in fixture_functors(3):
        r.instances += 1
        a = is_fibration_lifts(F)[0]
        pos += a
        if a != is_fibration_comma(F):
            r.fail(f"{na}→{nb} {F.omap}/{F.mmap}")
    r.notes["fibrations"] = pos


@_timed(9, "monoidal strictification", "the objects of QX are words", 30)
def check_strictification(r: CheckResult, maxlen=4):
    for X in (z2_strict(), z2_signed()):
        S = strictify(X, maxlen)
        for name, ok in S.checks.items():
            r.instances += 1
            if not ok:
                r.fail(f"{X.label}: {name}")
        e = idempotent_sl(S)
        r.instances += 2
        if not e["idempotent"]:
            r.fail(f"{X.label}: s∘l is not idempotent")
        if not e["splits"]:
            r.fail(f"{X.label}: (s, l) does not split s∘l")
        r.instances += 1
        bad = path_independence_failures(X, maxlen)
        if bad:
            r.fail(f"{X.label}: normalization strategies differ on {bad[0]}")


@_timed(10, "relative adjoints three ways", "has a left adjoint with identity unit", 10)
def check_relative_adjoints(r: CheckResult, n=30, seed=0):
    suite = relative_adjoint_suite(n, seed)
    pos = 0
    for name, j, g in suite:
        r.instances += 1
        v = relative_adjoint_verdicts(j, g)
        pos += v[0]
        if len(set(v)) != 1:
            r.fail(f"{name}: verdicts {v}")
    r.notes["positives"] = pos
    r.notes["negatives"] = len(suite) - pos


CHECKS = (check_cat_doctrine, check_tob_doctrine, check_soa_dags, check_pseudolimit,
          check_spans, check_mates, check_pie_alternates, check_fibrations,
          check_strictification, check_relative_adjoints)


def run_all(numbers=None, echo=None) -> list:
    out = []
    for chk in CHECKS:
        if numbers is not None and chk.number not in numbers:
            continue
        res = chk()
        if echo:
            echo(res.line())
        out.append(res)
    return out


def main(argv=None) -> int:
    import sys
    args = sys.argv[1:] if argv is None else argv
    numbers = {int(a) for a in args} or None
    results = run_all(numbers, echo=print)
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
