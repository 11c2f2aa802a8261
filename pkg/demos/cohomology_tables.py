"""Cohomology dimensions of the four small complexes.

Enumerates a basis in each bidegree, assembles the exact coboundary matrices and
reads off dim H = dim ker - rank.  Takes a few seconds for k <= 3.
"""
from knotgraph import basis, cohomology_table

KMAX, MMAX = 3, 2

for backbone in ("circle", "line"):
    for parity in ("odd", "even"):
        table = cohomology_table(backbone, parity, KMAX, MMAX)
        print(f"\n{backbone} / {parity}")
        print("k\\m " + "".join(f"{m:>8}" for m in range(MMAX + 1)))
        for k in range(KMAX + 1):
            cells = []
            for m in range(MMAX + 1):
                size = len(basis(backbone, parity, k, m))
                cells.append(f"{table[(k, m)]}/{size}")
            print(f"{k:<4}" + "".join(f"{c:>8}" for c in cells))

print("\ncells read dim H / basis size")
