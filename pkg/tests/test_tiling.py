from __future__ import annotations

from fractions import Fraction

import pytest

from rttlab.constructions import disjoint_cliques
from rttlab.graph import Graph
from rttlab.patterns import Pattern, PatternCopy
from rttlab.tiling import Tiling, allowance, factor, has_factor, max_tiling, quasiperfect_gap, verify_tiling

from conftest import brute_packing, copy_sets, random_graph, to_nx

K3 = Pattern.clique(3)


@pytest.mark.parametrize("literal", ["K3", "P3", "C4", "K1,3"])
@pytest.mark.parametrize("seed", range(8))
def test_max_tiling_matches_brute_packing(literal, seed):
    f = Pattern.parse(literal)
    g = random_graph(10, 0.45, 100 + seed)
    out = max_tiling(g, f)
    assert out.optimal
    assert out.copies == brute_packing(copy_sets(g, to_nx(f.graph)))
    assert len(out.tiling.uncovered) == g.n - f.k * out.copies


@pytest.mark.parametrize("seed", range(12))
def test_has_factor_agrees_with_packing(seed):
    g = random_graph(9, 0.55, 300 + seed)
    best = brute_packing(copy_sets(g, to_nx(K3.graph)))
    verdict = has_factor(g, K3)
    assert verdict == ("yes" if best == 3 else "no")
    fac = factor(g, K3)
    if verdict == "yes":
        verify_tiling(g, K3, fac, uncovered=frozenset())
    else:
        assert fac is None


def test_disjoint_cliques_examples():
    g = disjoint_cliques([8, 8])
    out = max_tiling(g, K3)
    assert out.copies == 4 and len(out.tiling.uncovered) == 4
    gap = quasiperfect_gap(g, K3, Fraction(2, 5))
    assert (gap.uncovered, gap.allowance, gap.quasiperfect) == (4, 4, True)
    assert quasiperfect_gap(g, K3, Fraction(1, 1)).quasiperfect is False


def test_within_scope_and_accept():
    g = Graph.complete(9)
    out = max_tiling(g, K3, within=range(7))
    assert out.copies == 2 and out.tiling.scope == frozenset(range(7))
    only_low = max_tiling(g, K3, accept=lambda c: max(c.vertices) < 6)
    assert only_low.copies == 2


def test_target_stops_early_without_claiming_optimality():
    out = max_tiling(Graph.complete(12), K3, target=2)
    assert out.copies >= 2 and not out.optimal and out.upper_bound == 4


def test_budget_exhaustion_is_reported():
    g = random_graph(30, 0.5, 9)
    out = max_tiling(g, K3, budget=2)
    assert not out.optimal
    assert out.upper_bound >= out.copies
    assert has_factor(g, K3, budget=1) in ("unknown", "yes")


def test_divisibility_and_empty():
    assert has_factor(Graph.complete(4), K3) == "no"
    assert has_factor(Graph.empty(0), K3) == "yes"
    assert factor(Graph.empty(0), K3) == []


def test_tiling_verifies_itself():
    g = Graph.complete(6)
    with pytest.raises(AssertionError):
        Tiling(g, K3, (PatternCopy((0, 1, 2)), PatternCopy((2, 3, 4))), frozenset({5}))
    with pytest.raises(AssertionError):
        Tiling(Graph.path(3), K3, (PatternCopy((0, 1, 2)),), frozenset())


def test_allowance():
    assert allowance(Fraction(2, 5), 3) == 4
    assert allowance(Fraction(1, 5), 3) == 10
    with pytest.raises(ValueError):
        allowance(0, 3)
