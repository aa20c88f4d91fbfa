"""
Characters, coinvariants and multiplicity tables
================================================
"""

from hurwitz_lab.characters import (
    EMPTY,
    Partition,
    hook_length_dim,
    macdonald_dim,
    multiplicity_stability_report,
    padded,
    partitions,
    shifted_coinvariant_dim,
)
from hurwitz_lab.groups import builtin_group

P = Partition.of

# the padded partition lambda[n] and its dimension, two ways
for lam in [EMPTY, P(1), P(2), P(1, 1), P(2, 1)]:
    row = [macdonald_dim(lam, n) for n in range(lam.size + lam.largest, 10)]
    check = [hook_length_dim(padded(lam, n)) for n in range(lam.size + lam.largest, 10)]
    print(lam, row, row == check)

# coinvariant dimensions are eventually constant
for lam in partitions(2):
    for r in range(4):
        print(lam, r, [shifted_coinvariant_dim(lam, r, n) for n in range(8)])

G = builtin_group("S3")
c = G.conjugacy_class(G.element_index("(12)"))
rep = multiplicity_stability_report(c, 7)
print(rep.table.to_csv())
print("rows constant from n =", rep.threshold, "|", rep.verdict)
