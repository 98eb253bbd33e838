from __future__ import annotations

import json
import math
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest

from rttlab.absorption import (
    IndexVector,
    ReachabilityCertificate,
    VertexPartition,
    absorbs,
    build_absorbing_set,
    build_fan,
    concatenate_reachability,
    detect_partition,
    find_absorber,
    find_disjoint_absorbers,
    find_disjoint_connectors,
    initial_partition,
    is_connector,
    k_vectors,
    merge_partition,
    montgomery_template,
    reverify_ledger,
    robust_vector_certificate,
    transferral,
    verify_absorber,
)
from rttlab.constructions import disjoint_cliques
from rttlab.errors import CertificateError, ConstructionError, HostMismatchError
from rttlab.graph import Graph, iter_bits
from rttlab.patterns import Pattern, is_copy
from rttlab.tiling import has_factor

K3 = Pattern.clique(3)


# -- index vectors and partitions ---------------------------------------


@pytest.mark.parametrize("size, k", [(1, 3), (2, 3), (3, 3), (3, 4)])
def test_k_vector_count(size, k):
    vecs = k_vectors(size, k)
    assert len(vecs) == math.comb(k + size - 1, size - 1)
    assert all(v.total == k and len(v) == size for v in vecs)


def test_transferral():
    assert transferral(IndexVector((2, 1)), IndexVector((1, 2))) == (0, 1)
    assert transferral(IndexVector((3, 0)), IndexVector((1, 2))) is None
    assert IndexVector.unit(3, 1).coords == (0, 1, 0)
    with pytest.raises(ValueError):
        IndexVector((-1, 2))


def test_partition_validation():
    g = Graph.complete(4)
    p = VertexPartition(g, [[2, 3], [0, 1]])
    assert p.as_lists() == [[0, 1], [2, 3]]
    assert p.index_vector([0, 2, 3]).coords == (1, 2)
    assert p.merge(0, 1).C == 1
    with pytest.raises(ValueError):
        VertexPartition(g, [[0, 1], [1, 2, 3]])
    with pytest.raises(ValueError):
        VertexPartition(g, [[0, 1]])


# -- fans and connectors -------------------------------------------------


def test_fan_is_disjoint_and_maximal():
    g = Graph.complete(7)
    fan = build_fan(g, K3, 0)
    assert len(fan) == 3
    assert all(is_copy(g, K3, sorted(s | {0})) for s in fan)
    assert len(set().union(*fan)) == 6


def test_connectors_in_clique():
    g = Graph.complete(10)
    cert = find_disjoint_connectors(g, K3, 0, 1)
    assert cert.strength == 4
    assert all(is_connector(g, K3, s, 0, 1, 1) for s in cert.connectors)
    assert cert.connector_avoiding([2, 3, 4]) is not None
    with pytest.raises(ValueError):
        find_disjoint_connectors(g, K3, 0, 0)


def test_certificate_rejects_bad_connectors():
    g = Graph.path(5)
    with pytest.raises(CertificateError):
        ReachabilityCertificate(g, K3, 0, 4, 1, (frozenset({1, 2}),))
    k = Graph.complete(6)
    with pytest.raises(CertificateError):
        ReachabilityCertificate(k, K3, 0, 1, 1, (frozenset({2, 3}), frozenset({3, 4})))


def test_longer_connectors_reach_across_a_bridge():
    # two K4 sharing one vertex: 0 and 6 only connect through the cut vertex
    g = Graph.from_edges(7, [e for e in combinations(range(4), 2)] + [e for e in combinations(range(3, 7), 2)])
    assert find_disjoint_connectors(g, K3, 0, 6, t=1).strength == 0
    assert find_disjoint_connectors(g, K3, 0, 6, t=2).strength >= 1


def test_concatenation_in_k20():
    g = Graph.complete(20)
    a = find_disjoint_connectors(g, K3, 0, 1)
    b = find_disjoint_connectors(g, K3, 1, 2)
    c = concatenate_reachability(a, b)
    assert (c.u, c.v, c.t) == (0, 2, 2)
    assert c.strength >= 4
    with pytest.raises(ValueError):
        concatenate_reachability(a, a)
    other = find_disjoint_connectors(Graph.complete(9), K3, 1, 2)
    with pytest.raises(HostMismatchError):
        concatenate_reachability(a, other)


def test_robust_vectors_respect_parts():
    g = disjoint_cliques([6, 6])
    p = VertexPartition(g, [range(6), range(6, 12)])
    assert robust_vector_certificate(g, K3, p, IndexVector((3, 0))).strength == 2
    assert robust_vector_certificate(g, K3, p, IndexVector((2, 1))).strength == 0
    with pytest.raises(ValueError):
        robust_vector_certificate(g, K3, p, IndexVector((1, 1)))


# -- templates -------------------------------------------------------------


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_template_matchings_with_networkx(m):
    tpl = montgomery_template(m, Fraction(1, 2), seed=m)
    assert (tpl.x_size, tpl.y_size, tpl.z_size) == (m + math.ceil(m / 2), 2 * m, 3 * m)
    assert not tpl.sampled and tpl.subsets_checked == math.comb(tpl.x_size, m)
    for sub in combinations(tpl.X, m):
        left = set(sub) | set(tpl.Y)
        h = nx.Graph()
        h.add_nodes_from(("L", a) for a in left)
        h.add_nodes_from(("Z", z) for z in tpl.Z)
        h.add_edges_from((("L", a), ("Z", z)) for a, z in tpl.edges if a in left)
        match = nx.bipartite.hopcroft_karp_matching(h, top_nodes=[("L", a) for a in left])
        assert len(match) // 2 == 3 * m
        ours = tpl.matching(sub)
        assert sorted(ours) == list(tpl.Z) and sorted(ours.values()) == sorted(left)


def test_template_rejects_bad_input():
    with pytest.raises(ValueError):
        montgomery_template(0, 1)
    with pytest.raises(ConstructionError):
        montgomery_template(3, Fraction(1, 2), seed=0, retries=1, z_degree=1)


# -- absorbers -----------------------------------------------------------


def test_verify_absorber_cases():
    g = Graph.complete(6)
    assert verify_absorber(g, K3, [0, 1, 2], [3, 4, 5]) is True
    assert verify_absorber(g, K3, [0, 1, 2], []) is True
    p = Graph.path(6)
    assert verify_absorber(p, K3, [0, 1, 2], [3, 4, 5]) is False
    with pytest.raises(ValueError):
        verify_absorber(g, K3, [0, 1], [3, 4, 5])
    with pytest.raises(ValueError):
        verify_absorber(g, K3, [0, 1, 2], [2, 3, 4])


def test_find_absorber_for_non_spanning_set():
    g = disjoint_cliques([6, 6])
    s = [0, 1, 6]
    a = find_absorber(g, K3, s)
    assert a is None or verify_absorber(g, K3, s, a) is True
    # S = {0, 1, 6} splits across components, so no absorber can exist
    assert a is None


def test_disjoint_proof_absorbers_sizes():
    g = Graph.complete(21)
    p = VertexPartition.trivial(g)
    found = find_disjoint_absorbers(g, K3, p, [0, 1, 2])
    assert len(found) == 2
    assert all(len(a) == 9 for a in found)
    assert not found[0] & found[1]
    assert len(find_disjoint_absorbers(g, K3, p, [0, 1, 2], target=1)) == 1


def test_absorbing_set_in_k30():
    g = Graph.complete(30)
    s = build_absorbing_set(g, K3, seed=0)
    rest = sorted(set(range(30)) - s.vertices)
    u = rest[:2]
    copies = s.absorb(u)
    assert sum(len(c.vertices) for c in copies) == len(s.vertices) + 2
    assert absorbs(s, u) is True
    assert reverify_ledger(g, K3, s.to_json())
    led = json.loads(s.to_json())
    led["X"][0] = led["Y"][0]  # a vertex used twice
    assert not reverify_ledger(g, K3, json.dumps(led))
    with pytest.raises(ValueError):
        s.absorb(sorted(s.vertices)[:2])


def test_absorbing_set_needs_real_absorbers_without_a_matching():
    # K_60 minus a perfect matching: some S contain a non-edge and need a nonempty absorber
    n = 60
    g = Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if not (v == u + 1 and u % 2 == 0)])
    s = build_absorbing_set(g, K3, m=1, beta=3, seed=3, min_fan=1)
    assert any(s.absorbers.values())
    for e, a in s.absorbers.items():
        assert verify_absorber(g, K3, list(iter_bits(s.edge_set(e))), a) is True
    assert reverify_ledger(g, K3, s.to_json())
    assert len(s.absorb([])) == len(s.vertices) // 3


def test_absorbing_set_sizing_failure():
    with pytest.raises(ConstructionError) as info:
        build_absorbing_set(Graph.complete(30), K3, m=3, gamma=Fraction(1, 2))
    assert info.value.stage == "sizing"


# -- partitions and merging --------------------------------------------


def test_initial_partition_separates_cliques():
    ev = initial_partition(disjoint_cliques([9, 9]), K3)
    assert ev.partition.C == 2 and not ev.weak_within_pairs
    assert ev.threshold == 2


def test_merge_partition_joins_an_artificial_split():
    g = Graph.complete(12)
    p = VertexPartition(g, [range(6), range(6, 12)])
    final, log = merge_partition(g, K3, p)
    assert final.C == 1 and len(log) == 1
    step = log[0]
    assert transferral(step.plus, step.minus) is not None


def test_detect_partition_keeps_separate_components():
    final, ev, log = detect_partition(disjoint_cliques([9, 9]), K3)
    assert final.C == 2 and not log
    assert has_factor(disjoint_cliques([9, 9]), K3) == "yes"
