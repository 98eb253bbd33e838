from __future__ import annotations

import networkx as nx
import pytest

from rttlab.errors import PatternError
from rttlab.graph import Graph
from rttlab.patterns import (
    Pattern,
    copies_containing,
    embed_pattern_at,
    embed_tree,
    enumerate_copies,
    find_copy_at,
    gamma,
    is_copy,
    spans_copy,
)

from conftest import copy_sets, random_graph, to_nx


@pytest.mark.parametrize(
    "literal, k, kind",
    [("K3", 3, "clique"), ("C5", 5, "cycle"), ("P4", 4, "tree"), ("K1,3", 4, "tree"), ("T:k=4;edges=0-1,1-2,1-3", 4, "tree")],
)
def test_parse(literal, k, kind):
    f = Pattern.parse(literal)
    assert (f.k, f.kind) == (k, kind)


@pytest.mark.parametrize("bad", ["K", "X3", "T:k=3;edges=0-1,1-2,2-0", "G:k=3;edges=0-x"])
def test_parse_rejects(bad):
    with pytest.raises(PatternError):
        Pattern.parse(bad)


def test_automorphism_counts_match_networkx():
    for literal in ["K3", "K4", "C5", "P4", "K1,3", "C6"]:
        f = Pattern.parse(literal)
        fg = to_nx(f.graph)
        expected = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(fg, fg).isomorphisms_iter())
        assert f.automorphism_count == expected


def test_gamma_values():
    # acyclic patterns need no deletions; a cycle needs one; K_k needs k - 2
    assert gamma(Pattern.parse("P5")) == 0
    assert gamma(Pattern.parse("C5")) == 1
    assert gamma(Pattern.clique(3)) == 1
    assert gamma(Pattern.clique(4)) == 2
    assert gamma(Pattern.clique(5)) == 3


@pytest.mark.parametrize("literal", ["K3", "C4", "P3", "K1,3", "K4"])
@pytest.mark.parametrize("seed", range(4))
def test_enumeration_matches_networkx_monomorphisms(literal, seed):
    f = Pattern.parse(literal)
    g = random_graph(9, 0.5, seed)
    ours = list(enumerate_copies(g, f))
    fg = to_nx(f.graph)
    gm = nx.algorithms.isomorphism.GraphMatcher(to_nx(g), fg)
    # monomorphisms G-subgraph -> F, counted once per copy
    expected = sum(1 for _ in gm.subgraph_monomorphisms_iter()) // f.automorphism_count
    assert len(ours) == expected
    assert len({c.vertices for c in ours}) == len(ours)
    assert all(is_copy(g, f, c.vertices) for c in ours)
    assert {c.vertex_set for c in ours} == copy_sets(g, fg)


def test_copy_stream_cap_reports_truncation():
    g = Graph.complete(7)
    stream = enumerate_copies(g, Pattern.clique(3), cap=5)
    assert len(list(stream)) == 5 and stream.truncated
    full = enumerate_copies(g, Pattern.clique(3), cap=35)
    assert len(list(full)) == 35 and not full.truncated


def test_rooted_copies():
    g = random_graph(10, 0.5, 7)
    f = Pattern.parse("C4")
    through = list(copies_containing(g, f, 0, g.full_mask))
    assert all(0 in c.vertices for c in through)
    assert len(through) == sum(1 for c in enumerate_copies(g, f) if 0 in c.vertices)


def test_embed_at_and_spans():
    g = Graph.complete(6)
    c = embed_pattern_at(g, Pattern.parse("P4"), 2, range(6))
    assert 2 in c.vertices and is_copy(g, Pattern.parse("P4"), c.vertices)
    assert spans_copy(g, Pattern.clique(3), [0, 1, 2])
    assert not spans_copy(Graph.path(3), Pattern.clique(3), [0, 1, 2])
    assert find_copy_at(Graph.empty(5), Pattern.clique(3), 0, range(5)) is None
    star = embed_tree(Graph.petersen(), Pattern.parse("K1,3"))
    assert star is not None and is_copy(Graph.petersen(), Pattern.parse("K1,3"), star.vertices)
