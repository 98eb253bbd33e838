from __future__ import annotations

import math

import networkx as nx
import numpy as np
import pytest

from rttlab.constructions import random_regular
from rttlab.graph import Graph
from rttlab.spectral import adjacency_matrix, expander_mixing_check, second_eigenvalue

from conftest import from_nx


def dense_lambda(g: Graph) -> float:
    vals = np.linalg.eigvalsh(nx.to_numpy_array(nx.Graph(g.edges()), nodelist=range(g.n)))
    return float(max(abs(vals[-2]), abs(vals[0])))


@pytest.mark.parametrize("g", [Graph.complete(6), Graph.cycle(8), Graph.petersen(), Graph.complete_bipartite(3, 3)])
def test_named_graphs_match_dense(g):
    rep = second_eigenvalue(g)
    assert rep.lam == pytest.approx(dense_lambda(g), abs=1e-6)


def test_closed_forms():
    assert second_eigenvalue(Graph.complete(6)).lam == pytest.approx(1.0, abs=1e-6)
    assert second_eigenvalue(Graph.petersen()).lam == pytest.approx(2.0, abs=1e-6)
    # C_8 is bipartite, so lambda_n = -2 dominates lambda_2 = sqrt(2)
    rep = second_eigenvalue(Graph.cycle(8))
    assert rep.lambda2 == pytest.approx(math.sqrt(2), abs=1e-6)
    assert rep.lam == pytest.approx(2.0, abs=1e-6)


def test_random_regular_against_networkx_spectrum():
    rng = np.random.default_rng(4)
    for _ in range(5):
        g = random_regular(20, 4, rng)
        assert set(g.degrees()) == {4}
        assert second_eigenvalue(g).lam == pytest.approx(dense_lambda(g), abs=1e-6)


def test_irregular_uses_dense():
    rep = second_eigenvalue(from_nx(nx.path_graph(5)))
    assert rep.d is None and rep.method == "dense"


def test_mixing_holds_at_lambda_and_fails_below():
    g = Graph.petersen()
    lam = second_eigenvalue(g).lam
    ok = expander_mixing_check(g, lam)
    assert ok.passed and ok.exhaustive and ok.pairs == 4**10
    bad = expander_mixing_check(g, 0.5)
    assert not bad.passed and bad.witness is not None


def test_mixing_rejects_irregular():
    with pytest.raises(ValueError):
        expander_mixing_check(Graph.path(4), 1.0)


def test_adjacency_matrix_symmetric():
    a = adjacency_matrix(Graph.cycle(5))
    assert (a == a.T).all() and a.sum() == 10
