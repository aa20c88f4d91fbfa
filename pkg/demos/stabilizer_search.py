"""
Central stabilizers in the component ring
=========================================

Search degree by degree for a central element whose multiplication map
is eventually a bijection on components, then lift it to the finer
quotient.
"""

from hurwitz_lab.braids import GradedComponentRing, check_lift_iso_on_pi0, find_central_stabilizer, scan_nc
from hurwitz_lab.groups import builtin_group

cases = [("Z2", "1", 5), ("S3", "(12)", 6), ("D5", "(25)(34)", 7), ("A4", "(123)", 8)]

for name, rep, nmax in cases:
    G = builtin_group(name)
    c = G.conjugacy_class(G.element_index(rep))
    ring = GradedComponentRing(c, nmax)
    print(name, "component counts", [ring.dim(n) for n in range(nmax + 1)])
    res = find_central_stabilizer(ring)
    if res.found is None:
        print("  nothing found:", res.reason)
        continue
    u = res.found
    print(f"  N={u.N} N0={u.N0}, sum of {len(u.u)} degree-{u.N} classes")
    Nc = scan_nc(c, nmax).empirical_nc or 0
    for row in check_lift_iso_on_pi0(u, range(max(u.N0, Nc), u.window_end + 1)):
        print("  lift at n =", row.n, "bijective" if row.bijective else "NOT bijective")

# a ring cut off too early finds nothing
G = builtin_group("S3")
print(find_central_stabilizer(GradedComponentRing(G.conjugacy_class(G.element_index("(12)")), 3)).reason)
