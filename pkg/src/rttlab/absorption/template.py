"""Bounded-degree bipartite templates with robust perfect matchings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from ..errors import ConstructionError

MAX_DEGREE = 40
EXHAUSTIVE_SUBSETS = 5000
SAMPLED_SUBSETS = 2000


@dataclass(frozen=True)
class Template:
    """Left side X (indices 0..|X|-1) then Y; right side Z (indices 0..|Z|-1)."""

    m: int
    beta: Fraction
    x_size: int
    y_size: int
    z_size: int
    edges: tuple[tuple[int, int], ...]  # (left index, z index)
    verified: bool
    sampled: bool
    subsets_checked: int
    attempts: int

    @property
    def X(self) -> range:
        return range(self.x_size)

    @property
    def Y(self) -> range:
        return range(self.x_size, self.x_size + self.y_size)

    @property
    def Z(self) -> range:
        return range(self.z_size)

    @property
    def surplus(self) -> int:
        return self.x_size - self.m

    @property
    def max_degree(self) -> int:
        deg: dict[tuple[str, int], int] = {}
        for a, b in self.edges:
            deg["L", a] = deg.get(("L", a), 0) + 1
            deg["R", b] = deg.get(("R", b), 0) + 1
        return max(deg.values(), default=0)

    def matching(self, x_subset) -> dict[int, int] | None:
        """Perfect matching of X' + Y onto Z as {z: left}, or None."""
        left = sorted(x_subset) + list(self.Y)
        return _perfect_matching(left, self.z_size, self.edges)


def _perfect_matching(left: list[int], z_size: int, edges) -> dict[int, int] | None:
    if len(left) != z_size:
        return None
    pos = {a: i for i, a in enumerate(left)}
    rows, cols = [], []
    for a, b in edges:
        if a in pos:
            rows.append(pos[a])
            cols.append(b)
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(left), z_size))
    match = maximum_bipartite_matching(graph, perm_type="column")
    if np.any(match < 0):
        return None
    return {int(match[i]): left[i] for i in range(len(left))}


def _sample_edges(rng: np.random.Generator, left: int, z_size: int, z_degree: int) -> list[tuple[int, int]] | None:
    edges = []
    for z in range(z_size):
        for a in sorted(rng.choice(left, size=z_degree, replace=False).tolist()):
            edges.append((a, z))
    deg = np.bincount([a for a, _ in edges], minlength=left)
    if deg.max(initial=0) > MAX_DEGREE:
        return None
    return edges


def montgomery_template(
    m: int,
    beta,
    seed=0,
    *,
    retries: int = 200,
    z_degree: int | None = None,
    exhaustive_limit: int = EXHAUSTIVE_SUBSETS,
) -> Template:
    """Random bounded-degree template, kept only once its matching property is checked.

    |X| = m + ceil(beta m), |Y| = 2m, |Z| = 3m.  Each Z vertex picks
    ``z_degree`` random neighbours in X + Y.  Every m-subset of X is checked
    when there are at most ``exhaustive_limit`` of them; otherwise a seeded
    sample is checked and the template is flagged as sampled.
    """
    if m < 1:
        raise ValueError("m must be positive")
    beta = Fraction(beta)
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    x_size = m + math.ceil(beta * m)
    y_size, z_size = 2 * m, 3 * m
    left = x_size + y_size
    if z_degree is None:
        z_degree = min(left, 8)
    z_degree = min(z_degree, left, MAX_DEGREE)
    rng = np.random.default_rng(seed)
    total = math.comb(x_size, m)
    sampled = total > exhaustive_limit
    for attempt in range(1, retries + 1):
        edges = _sample_edges(rng, left, z_size, z_degree)
        if edges is None:
            continue
        if sampled:
            subsets = (tuple(sorted(rng.choice(x_size, size=m, replace=False).tolist())) for _ in range(SAMPLED_SUBSETS))
        else:
            subsets = combinations(range(x_size), m)
        checked = 0
        ok = True
        for sub in subsets:
            checked += 1
            if _perfect_matching(list(sub) + list(range(x_size, left)), z_size, edges) is None:
                ok = False
                break
        if ok:
            return Template(m, beta, x_size, y_size, z_size, tuple(edges), True, sampled, checked, attempt)
    raise ConstructionError(
        f"no template for m={m}, beta={beta} after {retries} attempts",
        stage="template",
        metrics={"m": m, "beta": str(beta), "z_degree": z_degree, "retries": retries},
    )
