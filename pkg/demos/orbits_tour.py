"""
Braid orbits on tuples of transpositions
========================================

Count how braids shuffle tuples drawn from a conjugacy class, and watch
the counts settle down as the number of points grows.
"""

from hurwitz_lab.braids import BR, PBR, LabeledTuple, act_artin, enumerate_orbits, scan_nc
from hurwitz_lab.groups import builtin_group, is_non_splitting

G = builtin_group("S3")
c = G.conjugacy_class(G.element_index("(12)"))
print("class:", [G.element_name(x) for x in c.elements])

# one Artin generator on a pair
t = LabeledTuple.standard([G.element_index("(12)"), G.element_index("(13)")])
s = act_artin(1, t, c)
print("sigma_1 sends", [G.element_name(x) for x in t.labels], "to", [G.element_name(x) for x in s.labels])

# orbit counts, full braid group vs pure braids
for n in range(7):
    br = enumerate_orbits(c, n, BR)
    pbr = enumerate_orbits(c, n, PBR)
    print(f"n={n}  |c^n| = {3 ** n:4d}  Br-orbits {len(br):3d}  PBr-orbits {len(pbr):3d}")

# the two-point orbits, one line each
table = enumerate_orbits(c, 2, BR)
for o in range(len(table)):
    rep = table.canonical_rep(o).labels
    print(o, int(table.sizes[o]), " ".join(G.element_name(x) for x in rep))

print("non-splitting:", is_non_splitting(G, c).holds)
scan = scan_nc(c, 6)
print("orbit quotient bijective from n =", scan.empirical_nc)

# S4 is a different story: transpositions sit inside a Klein subgroup
G4 = builtin_group("S4")
v = is_non_splitting(G4, G4.conjugacy_class(G4.element_index("(12)")))
print("S4 non-splitting:", v.holds, "witness", sorted(G4.element_name(x) for x in v.witness))
