"""
Ordered Koszul complexes
========================

Build the complex for a few small pairs and print its homology.  With a
single central label the complex is the complex of injective words, so
the answer is the derangement numbers in the top degree.
"""

import time

from hurwitz_lab.groups import builtin_group
from hurwitz_lab.koszul import build_injective_words_complex, build_koszul, homology_dims, right_mult_homology_check


def pair(name, rep):
    G = builtin_group(name)
    return G.conjugacy_class(G.element_index(rep))


for name, rep, top in [("Z2", "1", 5), ("S3", "(12)", 4), ("A4", "(123)", 3)]:
    c = pair(name, rep)
    print(name, rep)
    for n in range(top + 1):
        t = time.perf_counter()
        cx = build_koszul(c, n)
        h = {d: x for d, x in homology_dims(cx).dims().items() if x}
        dims = [cx.dim(p) for p in range(-1, n)]
        print(f"  n={n} dims {dims} homology {h} ({time.perf_counter() - t:.2f}s)")

# right multiplication by a class element should kill homology
c = pair("S3", "(12)")
rows = right_mult_homology_check(c, 3)
print("zero on homology at n=3:", all(r.zero_on_homology for r in rows))

# injective words alone
for s in range(1, 6):
    _, rep = build_injective_words_complex(s, 1)
    print(f"words on {s} letters: vanishing through {rep.bound}, homology {rep.homology}")
