"""Generators for the extremal lower-bound constructions, each self-verifying."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import ConstructionError
from .graph import Graph, girth, iter_bits, max_clique, shortest_cycle
from .independence import alpha_r, alpha_star_r, clique_in
from .spectral import SpectralReport, second_eigenvalue

GIRTH_RETRIES = 50
CLIQUE_FREE_RETRIES = 50
REGULAR_RETRIES = 100_000


@dataclass
class Construction:
    """A generated graph plus the record of what was verified about it."""

    graph: Graph
    record: dict = field(default_factory=dict)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def x1_size(n: int, eta) -> int:
    return math.ceil(_frac(eta) * n)


def g0(n: int, eta) -> Graph:
    """Clique on the first ceil(eta n) vertices, joined completely to an independent rest."""
    eta = _frac(eta)
    if n < 1 or not 0 < eta <= 1:
        raise ValueError("g0 needs n >= 1 and 0 < eta <= 1")
    a = x1_size(n, eta)
    x1 = (1 << a) - 1
    full = (1 << n) - 1
    rows = [full & ~(1 << v) if v < a else x1 for v in range(n)]
    return Graph._trusted(n, rows, label=f"g0:n={n},eta={eta}")


def disjoint_cliques(sizes) -> Graph:
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("need a nonempty list of positive clique sizes")
    rows: list[int] = []
    start = 0
    for s in sizes:
        block = ((1 << s) - 1) << start
        rows.extend(block & ~(1 << v) for v in range(start, start + s))
        start += s
    return Graph._trusted(start, rows, label="cliques:sizes=" + "+".join(map(str, sizes)))


def gnp(n: int, p, seed) -> Graph:
    """Binomial random graph; deterministic in ``seed``."""
    p = float(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = _rng(seed)
    draw = rng.random((n, n)) < p
    iu, ju = np.nonzero(np.triu(draw, 1))
    return Graph.from_edges(n, zip(iu.tolist(), ju.tolist()))


def perturb(g: Graph, p, seed) -> Graph:
    """``g`` together with an independent G(n, p) on the same vertices."""
    return g.union(gnp(g.n, p, seed), label=f"{g.label or 'graph'}+G(n,{p})")


def _keep(g: Graph, alive: int, n: int, label: str) -> Graph:
    keep = list(iter_bits(alive))[:n]
    sub, _ = g.induced(keep)
    return Graph._trusted(sub.n, sub.adj, label=label)


# ----------------------------------------------------------------------
# high girth, no large biholes


def _girth_density(n: int, k: int) -> float:
    """Average degree D in the pool with about n/2 expected cycles of length <= k."""
    lo, hi = 0.0, 50.0
    for _ in range(60):
        mid = (lo + hi) / 2
        if sum(mid**ell / (2 * ell) for ell in range(3, k + 1)) > n / 2:
            hi = mid
        else:
            lo = mid
    return lo


def high_girth_bihole_free(n: int, k: int, alpha, seed, *, budget: int = 10**6, strict: bool = True) -> Construction:
    """Random sparse graph with girth > k, checked for alpha*_2 < alpha n.

    Samples G(2n, p) with p = min(C/n, D/(2n)), where C = max(ceil(8/alpha^2), 3k)
    and D caps the expected number of short cycles, deletes one vertex per
    cycle of length <= k and keeps the first n survivors.
    """
    alpha = _frac(alpha)
    if n < 10 or k < 3:
        raise ValueError("need n >= 10 and k >= 3")
    big_c = max(math.ceil(8 / alpha**2), 3 * k)
    pool = 2 * n
    p = min(big_c / n, _girth_density(n, k) / pool)
    rng = _rng(seed)
    best: Construction | None = None
    attempts = []
    for attempt in range(GIRTH_RETRIES):
        h = gnp(pool, p, int(rng.integers(2**63)))
        alive = h.full_mask
        deleted = 0
        while True:
            cyc = shortest_cycle(h, within=iter_bits(alive))
            if cyc is None or len(cyc) > k:
                break
            v = max(cyc, key=lambda x: ((h.adj[x] & alive).bit_count(), -x))
            alive &= ~(1 << v)
            deleted += 1
        if alive.bit_count() < n:
            attempts.append({"attempt": attempt, "survivors": alive.bit_count()})
            continue
        pre = h.induced(list(iter_bits(alive)))[0]
        g = _keep(h, alive, n, f"girth:n={n},k={k},alpha={alpha},seed={seed}")
        gi = girth(g)
        if gi <= k:  # pragma: no cover - defensive
            raise AssertionError("deletion loop left a short cycle")
        star = alpha_star_r(g, 2, budget=budget)
        if star.exact:
            ok = star.value < alpha * n
        else:
            ok = False if star.value >= alpha * n else None
        rec = {
            "p": p,
            "C": big_c,
            "pool": pool,
            "deleted": deleted,
            "girth": gi,
            "alpha_star_2": star.value,
            "alpha_star_exact": star.exact,
            "threshold": alpha * n,
            "verified": ok,
            "attempt": attempt,
            "pre_trim_vertices": pre.n,
        }
        attempts.append({"attempt": attempt, "alpha_star_2": star.value, "exact": star.exact})
        result = Construction(g, rec)
        if ok:
            return result
        if best is None or star.value < best.record["alpha_star_2"]:
            best = result
    if strict or best is None:
        raise ConstructionError(
            f"no graph with girth > {k} and alpha*_2 < {alpha}n after {GIRTH_RETRIES} attempts",
            stage="verify",
            metrics={"closest": best.record if best else None, "attempts": attempts[-5:]},
        )
    best.record["attempts"] = len(attempts)
    return best


# ----------------------------------------------------------------------
# K_{r+1}-free with small alpha_r


def _clique_free_p(pool: int, r: int) -> float:
    """p giving about pool/4 expected copies of K_{r+1}."""
    want = pool / 4
    copies = math.comb(pool, r + 1)
    if copies == 0:
        return 0.5
    return min(1.0, (want / copies) ** (1 / math.comb(r + 1, 2)))


def clique_free_low_alpha(
    n: int,
    r: int,
    alpha=None,
    seed=0,
    *,
    c: float | None = None,
    budget: int = 10**6,
    strict: bool = True,
) -> Construction:
    """Random graph with omega <= r, reported with its exact alpha_r.

    Uses G(N, p) with p = c N^{-x}, x the midpoint of (2/(r+1), 2/r).  By
    default c is picked so that about N/4 copies of K_{r+1} are expected,
    and one vertex of each copy found is deleted.  With ``alpha`` given,
    attempts with alpha_r >= alpha n are retried.
    """
    if r < 2 or n < 1:
        raise ValueError("need r >= 2 and n >= 1")
    x = (Fraction(2, r + 1) + Fraction(2, r)) / 2
    pool = n if r >= n else 2 * n
    if c is None:
        c = _clique_free_p(pool, r) * pool ** float(x)
    p = min(1.0, c * pool ** -float(x))
    rng = _rng(seed)
    best: Construction | None = None
    for attempt in range(CLIQUE_FREE_RETRIES):
        h = gnp(pool, p, int(rng.integers(2**63)))
        alive = h.full_mask
        deleted = 0
        while True:
            q = clique_in(h.adj, r + 1, alive)
            if q is None:
                break
            v = max(q, key=lambda y: ((h.adj[y] & alive).bit_count(), -y))
            alive &= ~(1 << v)
            deleted += 1
        if alive.bit_count() < n:
            continue
        g = _keep(h, alive, n, f"cliquefree:n={n},r={r},seed={seed}")
        omega = len(max_clique(g)[0]) if n else 0
        if omega > r:  # pragma: no cover - defensive
            raise AssertionError("deletion loop left a large clique")
        ar = alpha_r(g, r, budget=budget)
        if alpha is None:
            ok = True
        elif ar.exact:
            ok = ar.value < _frac(alpha) * n
        else:
            ok = False if ar.value >= _frac(alpha) * n else None
        rec = {
            "x": str(x),
            "c": c,
            "p": p,
            "pool": pool,
            "deleted": deleted,
            "omega": omega,
            "alpha_r": ar.value,
            "alpha_r_exact": ar.exact,
            "threshold": None if alpha is None else _frac(alpha) * n,
            "verified": ok,
            "attempt": attempt,
        }
        result = Construction(g, rec)
        if ok:
            return result
        if best is None or ar.value < best.record["alpha_r"]:
            best = result
    if strict or best is None:
        raise ConstructionError(
            f"no K_{r + 1}-free graph with alpha_{r} < {alpha}n after {CLIQUE_FREE_RETRIES} attempts",
            stage="verify",
            metrics={"closest": best.record if best else None},
        )
    return best


# ----------------------------------------------------------------------
# triangle-factor blocker


def random_regular(n: int, d: int, rng: np.random.Generator, retries: int = REGULAR_RETRIES) -> Graph:
    """Uniform simple d-regular graph by the pairing model with full resampling."""
    if d >= n or (n * d) % 2:
        raise ConstructionError(f"no {d}-regular graph on {n} vertices", stage="regular", metrics={"n": n, "d": d})
    points = np.repeat(np.arange(n), d)
    for _ in range(retries):
        perm = rng.permutation(points)
        a, b = perm[0::2], perm[1::2]
        if np.any(a == b):
            continue
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        keys = lo * n + hi
        if len(np.unique(keys)) != len(keys):
            continue
        return Graph.from_edges(n, zip(lo.tolist(), hi.tolist()))
    raise ConstructionError(
        f"pairing model failed {retries} times", stage="regular", metrics={"n": n, "d": d}
    )


def cross_triangles(g: Graph, part: int) -> int:
    """Number of triangles meeting both ``part`` and its complement."""
    other = g.full_mask & ~part
    count = 0
    for u, v in g.edges():
        c = g.adj[u] & g.adj[v] & ~((1 << (max(u, v) + 1)) - 1)
        for w in iter_bits(c):
            t = (1 << u) | (1 << v) | (1 << w)
            if t & part and t & other:
                count += 1
    return count


def triangle_factor_blocker(n: int, d: int, seed) -> Construction:
    """Two near-complete halves glued along a bipartite double cover.

    Each half is complete except that the other-side neighbourhood of any
    vertex stays independent, so no triangle meets both halves; the halves
    are then trimmed to sizes that differ modulo 3.
    """
    if n % 3 or n < 3:
        raise ValueError("n must be a positive multiple of 3")
    if d < 4 or d % 2:
        raise ValueError("d must be even and at least 4")
    n0 = math.ceil(n / 2) + 1
    adjusted = False
    if (n0 * d) % 2:  # pragma: no cover - d is even, so this never triggers
        n0 += 1
        adjusted = True
    if d >= n0:
        raise ValueError(f"d={d} too large for n0={n0}")
    rng = _rng(seed)
    base = random_regular(n0, d, rng)
    # inside each half, u ~ w unless they share a base neighbour
    same = [0] * n0
    for x in range(n0):
        for u, w in combinations(iter_bits(base.adj[x]), 2):
            same[u] |= 1 << w
            same[w] |= 1 << u
    excess = 2 * n0 - n
    if n % 2 == 0:
        del1, del2 = excess, 0
    else:
        # 2 n0 = n + 3 here; three deletions from one side would keep the
        # halves congruent mod 3, so split them 2 + 1
        del1, del2 = excess - 1, 1
    keep1 = list(range(n0 - del1))
    keep2 = list(range(n0 - del2))
    s1, s2 = len(keep1), len(keep2)
    n_total = s1 + s2
    rows = [0] * n_total
    half1 = (1 << s1) - 1
    for i, u in enumerate(keep1):
        inner = half1 & ~(1 << i) & ~_restrict(same[u], keep1)
        cross = _restrict(base.adj[u], keep2) << s1
        rows[i] = inner | cross
    half2 = ((1 << s2) - 1) << s1
    for j, u in enumerate(keep2):
        inner = half2 & ~(1 << (s1 + j)) & ~(_restrict(same[u], keep2) << s1)
        cross = _restrict(base.adj[u], keep1)
        rows[s1 + j] = inner | cross
    g = Graph(n_total, rows, label=f"blocker:n={n},d={d},seed={seed}")
    part1 = half1
    delta = min(g.degrees())
    rec = {
        "n0": n0,
        "n0_adjusted": adjusted,
        "d": d,
        "parts": (list(range(s1)), list(range(s1, n_total))),
        "sizes": (s1, s2),
        "sizes_mod3": (s1 % 3, s2 % 3),
        "deleted": (del1, del2),
        "cross_triangles": cross_triangles(g, part1),
        "min_degree": delta,
        "degree_floor": math.ceil(n / 2) - 1 - d * d - 4,
        "spectral": second_eigenvalue(base),
        "base_edges": base.edges(),
    }
    if rec["cross_triangles"]:  # pragma: no cover - defensive
        raise AssertionError("blocker has a triangle crossing the halves")
    return Construction(g, rec)


def _restrict(mask: int, keep: list[int]) -> int:
    """Re-index ``mask`` from original vertex ids to positions in ``keep``."""
    out = 0
    for i, v in enumerate(keep):
        if mask >> v & 1:
            out |= 1 << i
    return out


# ----------------------------------------------------------------------
# unions used by the lower-bound propositions


def g0_with_clique_free(n: int, eta, r: int, seed, **kw) -> Construction:
    """G0(n, eta) overlaid with a K_{r+1}-free random graph on the same vertices."""
    over = clique_free_low_alpha(n, r, kw.pop("alpha", None), seed, strict=False, **kw)
    g = g0(n, eta).union(over.graph, label=f"g0_cliquefree:n={n},eta={_frac(eta)},r={r},seed={seed}")
    return Construction(g, {"x1": x1_size(n, eta), "overlay": over.record})


def g0_with_high_girth(n: int, eta, k: int, alpha, seed, **kw) -> Construction:
    """G0(n, eta) overlaid with a girth > k graph on the same vertices."""
    over = high_girth_bihole_free(n, k, alpha, seed, strict=False, **kw)
    g = g0(n, eta).union(over.graph, label=f"g0_girth:n={n},eta={_frac(eta)},k={k},seed={seed}")
    return Construction(g, {"x1": x1_size(n, eta), "overlay": over.record})


__all__ = [
    "Construction",
    "SpectralReport",
    "g0",
    "disjoint_cliques",
    "gnp",
    "perturb",
    "high_girth_bihole_free",
    "clique_free_low_alpha",
    "random_regular",
    "cross_triangles",
    "triangle_factor_blocker",
    "g0_with_clique_free",
    "g0_with_high_girth",
    "x1_size",
]
