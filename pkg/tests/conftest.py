"""Shared brute-force oracles.  These deliberately avoid the package's own search code."""

from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from networkx.algorithms import isomorphism

from rttlab.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph.from_edges(h.number_of_nodes(), h.edges())


def random_graph(n: int, p: float, seed: int) -> Graph:
    return from_nx(nx.gnp_random_graph(n, p, seed=seed))


def has_kr(h: nx.Graph, vs, r: int) -> bool:
    return any(all(h.has_edge(a, b) for a, b in combinations(c, 2)) for c in combinations(vs, r))


def brute_alpha_r(g: Graph, r: int) -> int:
    h = to_nx(g)
    for size in range(g.n, -1, -1):
        for s in combinations(range(g.n), size):
            if not has_kr(h, s, r):
                return size
    return 0  # pragma: no cover


def brute_alpha_star(g: Graph, r: int) -> int:
    """Largest s with r disjoint s-sets and no transversal K_r (r in {2, 3})."""
    h = to_nx(g)
    n = g.n
    for s in range(n // r, 0, -1):
        for a in combinations(range(n), s):
            rest = [v for v in range(n) if v not in a]
            if r == 2:
                free = [w for w in rest if not any(h.has_edge(w, x) for x in a)]
                if len(free) >= s:
                    return s
                continue
            for b in combinations(rest, s):
                pairs = [(x, y) for x in a for y in b if h.has_edge(x, y)]
                free = [w for w in rest if w not in b and not any(h.has_edge(w, x) and h.has_edge(w, y) for x, y in pairs)]
                if len(free) >= s:
                    return s
    return 0


def copy_sets(g: Graph, f_graph: nx.Graph) -> set[frozenset[int]]:
    """Vertex sets of all (not necessarily induced) copies of F, via networkx monomorphisms."""
    gm = isomorphism.GraphMatcher(to_nx(g), f_graph)
    return {frozenset(m) for m in gm.subgraph_monomorphisms_iter()}


def brute_packing(sets) -> int:
    """Maximum number of pairwise disjoint sets, by plain recursion."""
    sets = sorted(sets, key=sorted)
    best = 0

    def rec(i: int, used: frozenset, count: int) -> None:
        nonlocal best
        best = max(best, count)
        if count + (len(sets) - i) <= best:
            return
        for j in range(i, len(sets)):
            if not sets[j] & used:
                rec(j + 1, used | sets[j], count + 1)

    rec(0, frozenset(), 0)
    return best


@pytest.fixture
def petersen() -> Graph:
    return Graph.petersen()
