"""Reachability partitions and transferral-driven merging.

``initial_partition`` is a heuristic stand-in for the iterated argument
that produces closed parts: it certifies sampled pairs and takes
connected components of the strongly-reachable relation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from ..graph import Graph
from ..patterns import Pattern
from .partition import IndexVector, VertexPartition, k_vectors, transferral
from .reachability import ReachabilityCertificate, find_disjoint_connectors, robust_vector_certificate

DEFAULT_SAMPLE_BUDGET = 2000


@dataclass
class PartitionEvidence:
    partition: VertexPartition
    threshold: int
    t: int
    certificates: dict[tuple[int, int], ReachabilityCertificate] = field(repr=False)
    sampled: bool
    heuristic: bool = True

    def within_pairs(self):
        """Sampled pairs lying inside one part, with their certificate strength."""
        p = self.partition
        for (u, v), cert in sorted(self.certificates.items()):
            if p.part_of(u) == p.part_of(v):
                yield (u, v), cert.strength

    @property
    def weak_within_pairs(self) -> list[tuple[int, int]]:
        return [pair for pair, s in self.within_pairs() if s < self.threshold]


def _threshold(delta, n: int) -> int:
    return max(2, math.floor(Fraction(delta) * n))


def initial_partition(
    g: Graph,
    f: Pattern,
    delta=Fraction(1, 10),
    t: int = 1,
    sample_budget: int = DEFAULT_SAMPLE_BUDGET,
    seed=0,
    upgrade: bool = True,
) -> PartitionEvidence:
    """Components of the relation 'u, v have >= threshold disjoint connectors'.

    All pairs are certified when there are at most ``sample_budget`` of
    them, otherwise a seeded random sample.  The threshold is
    max(2, floor(delta n)).  With ``upgrade``, sampled pairs that end up in
    one part without a strong certificate are re-certified with connectors
    of twice the length (chained through a middle vertex).
    """
    n = g.n
    threshold = _threshold(delta, n)
    pairs = list(combinations(range(n), 2))
    sampled = len(pairs) > sample_budget
    if sampled:
        rng = np.random.default_rng(seed)
        idx = sorted(rng.choice(len(pairs), size=sample_budget, replace=False).tolist())
        pairs = [pairs[i] for i in idx]
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    certs: dict[tuple[int, int], ReachabilityCertificate] = {}
    for u, v in pairs:
        cert = find_disjoint_connectors(g, f, u, v, t, target=threshold)
        certs[u, v] = cert
        if cert.strength >= threshold:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, int] = {}
    for v in range(n):
        r = find(v)
        groups[r] = groups.get(r, 0) | (1 << v)
    part = VertexPartition(g, list(groups.values()))
    if upgrade:
        for (u, v), cert in certs.items():
            if cert.strength < threshold and part.part_of(u) == part.part_of(v):
                longer = find_disjoint_connectors(g, f, u, v, 2 * t, target=threshold)
                if longer.strength > cert.strength:
                    certs[u, v] = longer
    return PartitionEvidence(part, threshold, t, certs, sampled)


@dataclass(frozen=True)
class MergeStep:
    merged: tuple[tuple[int, ...], tuple[int, ...]]
    plus: IndexVector
    minus: IndexVector
    strengths: tuple[int, int]


def robust_vectors(g: Graph, f: Pattern, p: VertexPartition, threshold: int) -> dict[IndexVector, int]:
    """k-vectors with at least ``threshold`` disjoint witness copies."""
    out = {}
    for vec in k_vectors(p.C, f.k):
        cert = robust_vector_certificate(g, f, p, vec, target=threshold)
        if cert.strength >= threshold:
            out[vec] = cert.strength
    return out


def merge_partition(
    g: Graph, f: Pattern, p: VertexPartition, t: int = 1, strength_threshold: int = 2
) -> tuple[VertexPartition, list[MergeStep]]:
    """Merge parts V_i, V_j while robust vectors a, b with a - b = u_i - u_j exist."""
    log: list[MergeStep] = []
    while p.C > 1:
        robust = robust_vectors(g, f, p, strength_threshold)
        step = None
        vecs = sorted(robust, reverse=True)
        for a in vecs:
            for b in vecs:
                ij = transferral(a, b)
                if ij is not None:
                    step = (ij, a, b)
                    break
            if step:
                break
        if step is None:
            break
        (i, j), a, b = step
        parts = p.as_lists()
        log.append(MergeStep((tuple(parts[i]), tuple(parts[j])), a, b, (robust[a], robust[b])))
        p = p.merge(i, j)
    return p, log


def detect_partition(
    g: Graph,
    f: Pattern,
    delta=Fraction(1, 10),
    t: int = 1,
    sample_budget: int = DEFAULT_SAMPLE_BUDGET,
    seed=0,
    strength_threshold: int | None = None,
) -> tuple[VertexPartition, PartitionEvidence, list[MergeStep]]:
    """initial_partition followed by merge_partition."""
    ev = initial_partition(g, f, delta, t, sample_budget, seed)
    thr = ev.threshold if strength_threshold is None else strength_threshold
    final, log = merge_partition(g, f, ev.partition, t, thr)
    return final, ev, log


__all__ = [
    "PartitionEvidence",
    "MergeStep",
    "initial_partition",
    "merge_partition",
    "robust_vectors",
    "detect_partition",
]
