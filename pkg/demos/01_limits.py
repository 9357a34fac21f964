"""Limits in Cat, computed: commas, an empty inserter and the pseudolimit of an arrow."""
from fin2cat.category import arrow_category, free_iso, terminal_category, to_terminal
from fin2cat.classify import classify_functor
from fin2cat.limits import comma_object, inserter, pie_alternate, find_iso_over, pseudolimit_of_arrow
from fin2cat.search import enumerate_functors

two, one, iso = arrow_category(), terminal_category(), free_iso()
bottom, top = sorted(enumerate_functors(one, two), key=lambda F: F.omap)

print("Two points of 𝟐, bottom = 0 and top = 1.")
for f, g, label in ((bottom, top, "bottom ⇒ top"), (top, bottom, "top ⇒ bottom")):
    L = inserter(f, g)
    print(f"  inserter {label}: {L.apex.n_obj} object(s), universal property checked: {L.verified}")
print("  The second is empty: there is no arrow 1 → 0, and that is a valid limit.")

L = pie_alternate("inserter", bottom, top)
print(f"\nThe same inserter as a pullback: iso over the first leg found = "
      f"{find_iso_over(inserter(bottom, top), L) is not None}")

C = comma_object(to_terminal(two), to_terminal(two))
print(f"\nComma of 𝟐 → 1 with itself is 𝟐 × 𝟐: {C.apex.n_obj} objects, {C.apex.n_mor} morphisms")

P = pseudolimit_of_arrow(to_terminal(iso))
print(f"\nPseudolimit of the free isomorphism → 1: objects {list(P.apex.objects)}")
flags = classify_functor(P.p_f, flags=("surjective_equivalence",)).flags()
print(f"  p_f is a surjective equivalence: {flags['surjective_equivalence']}")
print(f"  s_f picks {[P.apex.objects[x] for x in P.s_f.omap]}")
