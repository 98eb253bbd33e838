"""Why disjoint cliques are the obstacle to perfect tilings.

Each clique of size s = 2 (mod 3) strands two vertices, so l cliques strand
2l of them no matter how large the minimum degree is.
"""

from __future__ import annotations

from fractions import Fraction

from rttlab.constructions import disjoint_cliques
from rttlab.patterns import Pattern
from rttlab.tiling import max_tiling, quasiperfect_gap

K3 = Pattern.clique(3)

for sizes in ([8, 8], [11, 11], [8, 8, 8]):
    g = disjoint_cliques(sizes)
    out = max_tiling(g, K3)
    print(f"{'+'.join(map(str, sizes)):>8}: {out.copies} triangles, "
          f"{len(out.tiling.uncovered)} vertices left over (optimal={out.optimal})")

g = disjoint_cliques([8, 8])
for eta in (Fraction(2, 5), Fraction(1, 2), Fraction(1)):
    gap = quasiperfect_gap(g, K3, eta)
    print(f"eta={eta}: {gap.uncovered} uncovered against an allowance of {gap.allowance}"
          f" -> quasiperfect={gap.quasiperfect}")
