"""Pointwise equivalences of pseudonatural transformations are equivalences."""
from fin2cat import twocat as tc
from fin2cat.category import free_iso, identity_functor, terminal_category, to_terminal

iso, one = free_iso(), terminal_category()
D1 = tc.standard_presentation("D1")
F = tc.TwoFunctor(D1, {"0": iso, "1": one}, {"a": to_terminal(iso)}, {}, "F")
G = tc.TwoFunctor(D1, {"0": one, "1": one}, {"a": identity_functor(one)}, {}, "G")

(theta,) = tc.enumerate_pseudonaturals(F, G)
print("θ: F ⇒ G over a single arrow; θ_0 collapses the free isomorphism to a point.")
m = tc.mate_inverse(theta)
print(f"Inverse u: G ⇒ F built from mates; pseudonatural: {tc.pseudonat_violation(m.u) is None}")
print(f"  u_0 sends the point to {iso.objects[m.u.comp['0'].omap[0]]}")
print(f"  η and ε are modifications: "
      f"{tc.modification_violation(m.eta) is None and tc.modification_violation(m.eps) is None}")
for x in theta.comp:
    ok = tc._triangles(theta.comp[x], m.u.comp[x], m.eta.comp[x], m.eps.comp[x])
    print(f"  triangle identities at {x}: {ok}")
