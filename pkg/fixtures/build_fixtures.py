"""Regenerate the shipped JSON fixtures: ``python3 fixtures/build_fixtures.py``."""
from __future__ import annotations

import json
from pathlib import Path

from fin2cat import io
from fin2cat import twocat as tc
from fin2cat.category import (arrow_category, discrete_category, free_iso, functor_from_names,
                              terminal_category, to_terminal, identity_functor)
from fin2cat.monoidal import z2_signed, z2_strict
from fin2cat.sketches import sketch_of_category

HERE = Path(__file__).resolve().parent


def write(name: str, doc) -> None:
    (HERE / name).write_text(io.dumps(doc), encoding="utf-8")


def main() -> None:
    two, one, iso = arrow_category(), terminal_category(), free_iso()
    write("arrow.category.json", io.category_to_json(two))
    write("iso.category.json", io.category_to_json(iso))
    write("one.category.json", io.category_to_json(one))
    write("cat2.sketch.json", io.sketch_to_json(sketch_of_category(two)))

    # the two endpoints of 𝟐 picked out by functors 1 → 𝟐, in the wrong order
    # for an arrow f(x) → g(x) to exist
    f = functor_from_names(one, two, {"*": "1"}, {})
    g = functor_from_names(one, two, {"*": "0"}, {})
    write("bad-direction.json", {"f": io.functor_to_json(f), "g": io.functor_to_json(g)})
    write("good-direction.json", {"f": io.functor_to_json(g), "g": io.functor_to_json(f)})

    # the unique functor from the free-living isomorphism to 1 is an equivalence
    write("iso-to-one.functor.json", io.functor_to_json(to_terminal(iso)))
    sp = tc.span_embed(to_terminal(iso))
    write("iso-to-one.span.json", io.span_to_json(sp))

    D1 = {"standard": "D1"}
    F = tc.TwoFunctor(tc.standard_presentation("D1"), {"0": iso, "1": one},
                      {"a": to_terminal(iso)}, {}, "F")
    G = tc.TwoFunctor(tc.standard_presentation("D1"), {"0": one, "1": one},
                      {"a": identity_functor(one)}, {}, "G")
    for asg, name in ((F, "d1-source.twofunctor.json"), (G, "d1-target.twofunctor.json")):
        doc = io.assignment_to_json(asg)
        doc["presentation"] = D1
        write(name, doc)

    write("z2-strict.monoidal.json", io.monoidal_to_json(z2_strict()))
    write("z2-twisted.monoidal.json", io.monoidal_to_json(z2_signed()))
    # a sign on (g, e, g) alone is not a 3-cocycle, so the pentagon fails
    bad = io.monoidal_to_json(z2_signed())
    for row in bad["associator"]:
        if row[:3] == ["g", "e", "g"]:
            row[3] = ("−" if row[3][0] == "+" else "+") + row[3][1:]
    write("bad-pentagon.monoidal.json", bad)
    write("disc3.category.json", io.category_to_json(discrete_category(3)))

    fixtures = [
        {"name": "arrow category", "kind": "category", "file": "arrow.category.json"},
        {"name": "free isomorphism", "kind": "category", "file": "iso.category.json"},
        {"name": "sketch of 𝟐 is cat-injective", "kind": "sketch", "doctrine": "cat",
         "file": "cat2.sketch.json", "expect": True},
        {"name": "inserter in the bad direction is empty", "kind": "limit",
         "limit": "inserter", "file": "bad-direction.json",
         "expect": {"verified": True, "apex_objects": 0}},
        {"name": "inserter in the good direction is a point", "kind": "limit",
         "limit": "inserter", "file": "good-direction.json",
         "expect": {"verified": True, "apex_objects": 1}},
        {"name": "strict ℤ/2", "kind": "monoidal", "file": "z2-strict.monoidal.json"},
        {"name": "cocycle-twisted ℤ/2", "kind": "monoidal", "file": "z2-twisted.monoidal.json"},
        {"name": "functors 𝟐 → 𝟐", "kind": "functors", "file": "two-to-two.json",
         "expect": 3},
    ]
    write("two-to-two.json", {"source": "arrow.category.json", "target": "arrow.category.json"})
    for fx in fixtures:
        fx["sha256"] = io.digest(HERE / fx["file"])
    write("suite.json", {"criteria": list(range(1, 11)), "fixtures": fixtures})
    write("suite-fixtures-only.json", {"fixtures": fixtures})
    write("suite-empty.json", {})

    # negative control: same fixture list, one file damaged after hashing
    neg = HERE / "negative"
    neg.mkdir(exist_ok=True)
    broken = json.loads((HERE / "arrow.category.json").read_text(encoding="utf-8"))
    broken["compose"] = [[g, f, "id1" if (g, f) == ("u", "id0") else h]
                         for g, f, h in broken["compose"]]
    (neg / "arrow.category.json").write_text(io.dumps(broken), encoding="utf-8")
    bad_fx = [dict(fx) for fx in fixtures if fx["kind"] != "functors"]
    for fx in bad_fx:
        if fx["file"] == "arrow.category.json":
            fx["file"] = "negative/arrow.category.json"
    write("suite-corrupted.json", {"fixtures": bad_fx})


if __name__ == "__main__":
    main()
