"""Linear minimum degree, yet a maximum triangle tiling leaves 40% of the vertices bare.

G0(60, 1/5) puts a 12-clique X1 in front of 48 independent vertices.  A
triangle-free random graph on the same vertices keeps the clique number of
the rest at 2, so every triangle still needs an X1 vertex: at most 12 of them.
"""

from __future__ import annotations

from fractions import Fraction

from rttlab.constructions import g0_with_clique_free
from rttlab.graph import min_degree
from rttlab.independence import alpha_r
from rttlab.patterns import Pattern
from rttlab.tiling import max_tiling

con = g0_with_clique_free(60, Fraction(1, 5), r=2, seed=0)
g = con.graph
print(f"n={g.n}, min degree {min_degree(g)}, |X1|={con.record['x1']}")
print(f"independence number {alpha_r(g, 2).value}; overlay alpha_2 = {con.record['overlay']['alpha_r']}")

out = max_tiling(g, Pattern.clique(3))
print(f"maximum triangle tiling: {out.copies} copies covering {3 * out.copies} of {g.n} vertices "
      f"(optimal={out.optimal}, {out.nodes} nodes)")
