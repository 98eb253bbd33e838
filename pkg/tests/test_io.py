from __future__ import annotations

from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from rttlab.constructions import disjoint_cliques, g0, triangle_factor_blocker
from rttlab.errors import ParseError
from rttlab.graph import Graph
from rttlab.harness.io import (
    dumps,
    from_edgelist,
    from_graph6,
    loads,
    read_graph,
    to_edgelist,
    to_graph6,
    write_graph,
)

from conftest import to_nx


def nx_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


def test_known_encodings():
    assert to_graph6(Graph.complete(4)) == "C~"
    assert to_graph6(Graph.complete(1)) == "@"
    assert to_graph6(Graph.empty(0)) == "?"
    assert from_graph6("C~") == Graph.complete(4)


@pytest.mark.parametrize("n", [62, 63, 64, 130])
def test_size_field_forms(n):
    g = Graph.cycle(n)
    text = to_graph6(g)
    assert text == nx_graph6(g)
    assert text.startswith("~") == (n > 62)
    assert from_graph6(text) == g


def test_fuzz_round_trip_against_networkx():
    rng = np.random.default_rng(2024)
    for _ in range(10**4):
        n = int(rng.integers(0, 63))
        upper = np.triu(rng.random((n, n)) < rng.random(), 1)
        iu, ju = np.nonzero(upper)
        g = Graph.from_edges(n, zip(iu.tolist(), ju.tolist()))
        text = to_graph6(g)
        assert from_graph6(text) == g
        if n % 16 == 0:
            assert text == nx_graph6(g)


def test_corpus_round_trip(tmp_path):
    corpus = [
        Graph.petersen(),
        disjoint_cliques([8, 8]),
        g0(10, Fraction(3, 10)),
        triangle_factor_blocker(24, 4, 1).graph,
        Graph.empty(3),
    ]
    for i, g in enumerate(corpus):
        for fmt, suffix in (("graph6", ".g6"), ("edgelist", ".txt")):
            path = write_graph(g, tmp_path / f"g{i}{suffix}")
            assert read_graph(path) == g
            assert loads(dumps(g, fmt), fmt) == g


@pytest.mark.parametrize(
    "text, position",
    [("", 0), ("C", 1), ("C~~", 2), ("C\x7f", 1), (">>graph6<<C~", 0)],
)
def test_graph6_errors(text, position):
    with pytest.raises(ParseError) as info:
        from_graph6(text)
    assert info.value.position == position


def test_graph6_padding_must_be_zero():
    # n = 3 has three edge bits, so the last three bits are padding
    assert from_graph6("Bw") == Graph.complete(3)
    with pytest.raises(ParseError):
        from_graph6("B" + chr(63 + 0b000001))


def test_edgelist_format():
    g = Graph.path(3)
    assert to_edgelist(g) == "3 2\n0 1\n1 2\n"
    assert from_edgelist("3 2\n0 1\n1 2\n") == g


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 1\n0 x\n", 2),
        ("3 1\n1 0\n", 2),
        ("3 2\n0 1\n0 1\n", 3),
        ("3 2\n0 1\n", 3),
        ("3\n", 1),
        ("", 1),
        ("2 1\n0 2\n", 2),
    ],
)
def test_edgelist_errors(text, line):
    with pytest.raises(ParseError) as info:
        from_edgelist(text)
    assert info.value.line == line


def test_unknown_format():
    with pytest.raises(ValueError):
        dumps(Graph.complete(2), "dot")
