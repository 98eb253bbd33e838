"""The two-halves blocker: parity alone rules out a triangle factor.

Two halves whose sizes differ mod 3 are glued along a random 4-regular
bipartite double cover in such a way that no triangle meets both halves.
"""

from __future__ import annotations

from rttlab.constructions import triangle_factor_blocker
from rttlab.graph import Graph
from rttlab.patterns import Pattern
from rttlab.spectral import expander_mixing_check, second_eigenvalue
from rttlab.tiling import has_factor

K3 = Pattern.clique(3)

for n in (12, 24, 60):
    con = triangle_factor_blocker(n, 4, seed=1)
    rec = con.record
    print(f"n={n}: halves {rec['sizes']} (mod 3: {rec['sizes_mod3']}), "
          f"cross triangles {rec['cross_triangles']}, min degree {rec['min_degree']}, "
          f"triangle factor: {has_factor(con.graph, K3)}")

base_lambda = triangle_factor_blocker(60, 4, seed=1).record["spectral"]
print(f"base graph: d={base_lambda.d}, lambda={base_lambda.lam:.4f} via {base_lambda.method}")

pet = Graph.petersen()
lam = second_eigenvalue(pet).lam
res = expander_mixing_check(pet, lam)
print(f"Petersen: lambda={lam:.6f}; mixing inequality holds on all {res.pairs} subset pairs: {res.passed}")
