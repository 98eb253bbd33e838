from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rttlab.graph import Graph
from rttlab.independence import alpha_r, alpha_star_r, is_kr_free, verify_hole

from conftest import brute_alpha_r, brute_alpha_star, from_nx, random_graph


def test_petersen_values(petersen):
    assert alpha_r(petersen, 2).value == 4
    assert alpha_r(petersen, 3).value == 10  # triangle-free
    star = alpha_star_r(petersen, 2)
    assert star.value == brute_alpha_star(petersen, 2)
    assert verify_hole(petersen, [p.mask for p in star.witness])


def test_complete_bipartite_hole():
    g = Graph.complete_bipartite(4, 4)
    assert alpha_star_r(g, 2).value == 2
    assert alpha_r(g, 2).value == 4


def test_alpha2_is_complement_clique_number():
    g = random_graph(16, 0.4, 5)
    comp = nx.complement(nx.Graph(g.edges()) if g.edges() else nx.empty_graph(g.n))
    comp.add_nodes_from(range(g.n))
    assert alpha_r(g, 2).value == max(len(c) for c in nx.find_cliques(comp))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 9), st.floats(0.1, 0.9), st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_against_subset_enumeration(n, p, seed, r):
    g = from_nx(nx.gnp_random_graph(n, p, seed=seed))
    a = alpha_r(g, r)
    assert a.exact and a.value == brute_alpha_r(g, r)
    assert is_kr_free(g, r, a.witness.mask)
    s = alpha_star_r(g, r)
    assert s.exact and s.value == brute_alpha_star(g, r)
    assert verify_hole(g, [p.mask for p in s.witness])
    # splitting a K_r-free set into r near-equal parts gives a hole of size floor(a / r)
    assert a.value <= r * s.value + r - 1


def test_witness_and_errors():
    g = Graph.complete(5)
    assert alpha_r(g, 3).value == 2
    with pytest.raises(ValueError):
        alpha_r(g, 1)
    with pytest.raises(ValueError):
        alpha_star_r(Graph.complete(2), 3)
    assert alpha_r(Graph.empty(0), 2).value == 0


def test_budget_flag_is_honest():
    g = random_graph(45, 0.5, 2)
    rep = alpha_r(g, 3, budget=5)
    assert not rep.exact
    assert is_kr_free(g, 3, rep.witness.mask)
    assert rep.value == rep.witness.mask.bit_count()


def test_literal_bound_fails_on_small_cliques():
    # K_3: alpha_2 = 1 but no two disjoint nonadjacent vertices exist
    g = Graph.complete(3)
    assert alpha_r(g, 2).value == 1 and alpha_star_r(g, 2).value == 0
