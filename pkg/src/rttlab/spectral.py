"""Second eigenvalue by deflated power iteration, and expander-mixing checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph

TOLERANCE = 1e-9
MAX_ITERATIONS = 10**5
EXHAUSTIVE_LIMIT = 14


@dataclass(frozen=True)
class SpectralReport:
    d: int | None  # None marks an irregular graph
    lam: float
    lambda2: float
    lambda_min: float
    iterations: int
    residual: float
    method: str

    @property
    def regular(self) -> bool:
        return self.d is not None


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.float64)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1.0
    return a


def _dominant_on_complement(b: np.ndarray, seed: int, tol: float, cap: int) -> tuple[float, float, int]:
    """Largest eigenvalue of the PSD matrix ``b`` on the complement of the ones vector."""
    n = b.shape[0]
    ones = np.full(n, 1.0 / math.sqrt(n))
    x = np.random.default_rng(seed).standard_normal(n)
    x -= ones * (ones @ x)
    x /= np.linalg.norm(x)
    mu, res = 0.0, math.inf
    for it in range(1, cap + 1):
        y = b @ x
        y -= ones * (ones @ y)
        mu = float(x @ y)
        res = float(np.linalg.norm(y - mu * x))
        if res < tol:
            return mu, res, it
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return 0.0, 0.0, it
        x = y / norm
    return mu, res, cap


def second_eigenvalue(g: Graph, tol: float = TOLERANCE, max_iter: int = MAX_ITERATIONS, seed: int = 0) -> SpectralReport:
    """lambda(G) = max(|lambda_2|, |lambda_n|) of the adjacency spectrum.

    For d-regular graphs the top eigenvector is the all-ones vector, so we
    power-iterate A + dI and dI - A on its orthogonal complement.  When
    that fails to converge we fall back to a dense eigensolve and say so
    in ``method``.  Irregular graphs always use the dense solver.
    """
    if g.n < 2:
        raise ValueError("need at least two vertices")
    a = adjacency_matrix(g)
    degs = set(g.degrees())
    if len(degs) != 1:
        vals = np.linalg.eigvalsh(a)
        return SpectralReport(None, float(max(abs(vals[-2]), abs(vals[0]))), float(vals[-2]), float(vals[0]), 0, 0.0, "dense")
    d = degs.pop()
    eye = np.eye(g.n) * d
    top, res1, it1 = _dominant_on_complement(a + eye, seed, tol, max_iter)
    bottom, res2, it2 = _dominant_on_complement(eye - a, seed + 1, tol, max_iter)
    lam2, lamn = top - d, d - bottom
    res = max(res1, res2)
    method = "power"
    if res >= tol:
        vals = np.linalg.eigvalsh(a)
        lam2, lamn = float(vals[-2]), float(vals[0])
        method = "dense-fallback"
    return SpectralReport(d, max(abs(lam2), abs(lamn)), lam2, lamn, it1 + it2, res, method)


@dataclass(frozen=True)
class MixingResult:
    passed: bool
    worst_slack: float
    pairs: int
    exhaustive: bool
    witness: tuple[frozenset[int], frozenset[int]] | None


def _subset_matrix(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.float64)


def expander_mixing_check(g: Graph, lam, trials: int = 10**4, seed: int = 0, tol: float = 1e-9) -> MixingResult:
    """Check |e(A,B) - d|A||B|/n| <= lam * sqrt(|A||B|) on many pairs.

    Graphs with at most 14 vertices are checked on every pair of subsets;
    larger ones on ``trials`` uniformly random pairs.  ``worst_slack`` is
    the minimum of right side minus left side.
    """
    degs = set(g.degrees())
    if len(degs) != 1:
        raise ValueError("expander mixing needs a regular graph")
    d, n, lam = degs.pop(), g.n, float(lam)
    a = adjacency_matrix(g)
    if n <= EXHAUSTIVE_LIMIT:
        s = _subset_matrix(n)
        sizes = s.sum(axis=1)
        sa = s @ a
        worst, witness = math.inf, None
        chunk = max(1, (1 << 22) // (1 << n))
        for lo in range(0, 1 << n, chunk):
            e = sa[lo : lo + chunk] @ s.T
            prod = sizes[lo : lo + chunk, None] * sizes[None, :]
            slack = lam * np.sqrt(prod) - np.abs(e - d * prod / n)
            i, j = np.unravel_index(np.argmin(slack), slack.shape)
            if slack[i, j] < worst:
                worst = float(slack[i, j])
                witness = (lo + int(i), int(j))
        pairs = 1 << (2 * n)
        exhaustive = True
    else:
        rng = np.random.default_rng(seed)
        worst, witness = math.inf, None
        for _ in range(trials):
            ma = rng.random(n) < rng.random()
            mb = rng.random(n) < rng.random()
            e = float(ma.astype(float) @ a @ mb.astype(float))
            prod = float(ma.sum() * mb.sum())
            slack = lam * math.sqrt(prod) - abs(e - d * prod / n)
            if slack < worst:
                worst = slack
                witness = (ma, mb)
        pairs = trials
        exhaustive = False
    passed = worst >= -tol
    wit = None
    if not passed and witness is not None:
        wa, wb = witness
        if isinstance(wa, int):
            wit = (frozenset(v for v in range(n) if wa >> v & 1), frozenset(v for v in range(n) if wb >> v & 1))
        else:
            wit = (frozenset(np.flatnonzero(wa).tolist()), frozenset(np.flatnonzero(wb).tolist()))
    return MixingResult(passed, worst, pairs, exhaustive, wit)


__all__ = ["SpectralReport", "second_eigenvalue", "MixingResult", "expander_mixing_check", "adjacency_matrix"]
