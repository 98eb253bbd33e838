"""Reachability partitions, and merging parts that admit a transferral.

Vertices that share many disjoint connectors end up in the same part.  Two
parts merge once robust index vectors a and b differ by a unit transfer.
"""

from __future__ import annotations

from rttlab.absorption import VertexPartition, detect_partition, merge_partition
from rttlab.constructions import disjoint_cliques, triangle_factor_blocker
from rttlab.graph import Graph
from rttlab.patterns import Pattern

K3 = Pattern.clique(3)

for name, g in [("K18", Graph.complete(18)), ("2 x K9", disjoint_cliques([9, 9])),
                ("blocker n=60", triangle_factor_blocker(60, 4, 0).graph)]:
    final, ev, log = detect_partition(g, K3)
    print(f"{name}: {final.C} part(s) of sizes {[len(p) for p in final.as_lists()]}, "
          f"threshold {ev.threshold}, {len(log)} merges")

g = Graph.complete(12)
split = VertexPartition(g, [range(6), range(6, 12)])
merged, log = merge_partition(g, K3, split)
step = log[0]
print(f"artificial split of K12 merges via {step.plus} - {step.minus}; parts now {merged.C}")
