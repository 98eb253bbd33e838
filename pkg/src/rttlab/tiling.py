"""Exact maximum F-tiling by branch and bound over pattern copies."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from collections.abc import Callable

from .errors import ResourceError
from .graph import Graph, as_mask, iter_bits, lowest_bit, max_clique, shortest_cycle, to_mask
from .patterns import Pattern, PatternCopy, copies_containing, gamma, is_copy

DEFAULT_BUDGET = 10**7
COMPONENT_COPY_CAP = 200_000
MEMO_CAP = 2_000_000


@dataclass(frozen=True)
class Tiling:
    host: Graph = field(repr=False)
    pattern: Pattern
    copies: tuple[PatternCopy, ...]
    uncovered: frozenset[int]
    scope: frozenset[int] | None = None  # None means the whole host

    def __post_init__(self):
        verify_tiling(self.host, self.pattern, self.copies, within=self.scope, uncovered=self.uncovered)

    @property
    def size(self) -> int:
        return len(self.copies)


@dataclass(frozen=True)
class SolveOutcome:
    tiling: Tiling
    optimal: bool
    nodes: int
    wall_time: float
    upper_bound: int

    @property
    def copies(self) -> int:
        return self.tiling.size


def verify_tiling(g: Graph, f: Pattern, copies, within=None, uncovered=None) -> None:
    """Re-check a tiling from scratch; raises AssertionError on any defect."""
    universe = as_mask(g, within) if within is not None else g.full_mask
    used = 0
    for c in copies:
        if not is_copy(g, f, c.vertices):
            raise AssertionError(f"{c.vertices} is not a copy of {f}")
        m = to_mask(c.vertices)
        if m & used:
            raise AssertionError(f"copy {c.vertices} overlaps an earlier copy")
        if m & ~universe:
            raise AssertionError(f"copy {c.vertices} leaves the allowed vertex set")
        used |= m
    if uncovered is not None:
        expected = frozenset(iter_bits(universe & ~used))
        if frozenset(uncovered) != expected:
            raise AssertionError("uncovered set does not match the copies")


class _Budget(Exception):
    pass


class _Done(Exception):
    pass


class _Bound:
    """Admissible upper bounds on how many more copies fit in ``avail``.

    Three certified ingredients, combined per copy-component:
      * ``floor(|avail| / k)``;
      * no copy crosses between components of the copy-overlap relation;
      * hitting set ``H``: every copy meets ``H`` in at least ``c`` vertices,
        so at most ``floor(|H & avail| / c)`` copies fit.
    """

    def __init__(self, comps: list[int], hitting: int, c: int, k: int):
        self.comps = comps
        self.hitting = hitting
        self.c = c
        self.k = k

    def __call__(self, avail: int) -> int:
        total = 0
        k, c, h = self.k, self.c, self.hitting
        for comp in self.comps:
            part = avail & comp
            if not part:
                continue
            b = part.bit_count() // k
            if c:
                b = min(b, (part & h).bit_count() // c)
            total += b
        return total


def _components_and_live(g: Graph, f: Pattern, avail: int, accept) -> tuple[list[int], int] | None:
    """Copy-overlap components and the set of vertices lying in some copy."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    live = 0
    count = 0
    for v in iter_bits(avail):
        # copies whose least vertex is v; they only use vertices >= v
        higher = avail & ~((1 << (v + 1)) - 1)
        for c in copies_containing(g, f, v, higher):
            if accept is not None and not accept(c):
                continue
            count += 1
            if count > COMPONENT_COPY_CAP:
                return None
            for x in c.vertices:
                parent.setdefault(x, x)
            root = find(c.vertices[0])
            for x in c.vertices[1:]:
                rx = find(x)
                if rx != root:
                    parent[rx] = root
            live |= c.mask
    groups: dict[int, int] = {}
    for x in parent:
        r = find(x)
        groups[r] = groups.get(r, 0) | (1 << x)
    comps = sorted(groups.values(), key=lambda m: m & -m)
    return comps, live


def _hitting_set(g: Graph, f: Pattern, avail: int) -> tuple[int, int]:
    """Greedy copy-free set I; returns (H = avail - I, c) with |copy & H| >= c."""
    order = sorted(iter_bits(avail), key=lambda v: ((g.adj[v] & avail).bit_count(), v))
    free = 0
    for v in order:
        if next(copies_containing(g, f, v, free), None) is None:
            free |= 1 << v
    c = 1
    if f.kind == "clique" and free:
        # a copy meets I in a clique of G[I]
        try:
            omega, _ = max_clique(g, within=list(iter_bits(free)), budget=10**5)
            c = max(c, f.k - len(omega))
        except ResourceError:
            pass
    if free:
        cyc = shortest_cycle(g, within=list(iter_bits(free)))
        if cyc is None or len(cyc) > f.k:
            # copy & I induces a forest in F, so |copy & H| >= gamma(F)
            c = max(c, gamma(f))
    return avail & ~free, c


def _search(
    g: Graph,
    f: Pattern,
    avail0: int,
    budget: int,
    accept: Callable[[PatternCopy], bool] | None,
    floor_value: int,
    target: int | None,
    cover_all: bool = False,
):
    """Shared branch and bound.  Returns (best_copies, optimal, nodes, root_bound)."""
    k = f.k
    info = _components_and_live(g, f, avail0, accept)
    if info is None:
        comps, live = [avail0], avail0
    else:
        comps, live = info
    if cover_all and avail0 & ~live:
        return [], True, 0, 0
    avail0 &= live
    hitting, c = _hitting_set(g, f, avail0) if accept is None else (avail0, 1)
    bound = _Bound(comps, hitting, c, k)
    root_bound = bound(avail0)
    stop_at = root_bound if target is None else min(root_bound, target)

    best: list[PatternCopy] = []
    best_size = floor_value
    chosen: list[PatternCopy] = []
    nodes = 0
    memo: dict[int, int] = {}

    def candidates(v: int, avail: int) -> list[PatternCopy]:
        cands = [c for c in copies_containing(g, f, v, avail) if accept is None or accept(c)]
        cands.sort(key=lambda c: ((c.mask & hitting).bit_count(), c.vertices))
        return cands

    def rec(avail: int) -> None:
        nonlocal nodes, best, best_size
        nodes += 1
        if nodes > budget:
            raise _Budget
        here = len(chosen)
        if here > best_size:
            best_size = here
            best = list(chosen)
            if best_size >= stop_at:
                raise _Done
        if not avail:
            return
        if here + bound(avail) <= best_size:
            return
        seen = memo.get(avail)
        if seen is not None and seen >= here:
            return
        if len(memo) < MEMO_CAP:
            memo[avail] = here
        v = lowest_bit(avail)
        for cpy in candidates(v, avail):
            chosen.append(cpy)
            rec(avail & ~cpy.mask)
            chosen.pop()
        if not cover_all:
            rec(avail & ~(1 << v))

    optimal = True
    try:
        rec(avail0)
    except _Done:
        pass
    except _Budget:
        optimal = False
    return best, optimal, nodes, root_bound


def max_tiling(
    g: Graph,
    f: Pattern,
    budget: int = DEFAULT_BUDGET,
    *,
    within=None,
    accept: Callable[[PatternCopy], bool] | None = None,
    target: int | None = None,
) -> SolveOutcome:
    """Maximum set of vertex-disjoint copies of F in ``g[within]``.

    ``accept`` restricts which copies may be used; ``target`` stops the
    search once that many copies are found (the outcome is then reported
    optimal only if the target equals the proven bound).
    """
    if f.k < 2:
        raise ValueError("patterns need k >= 2")
    start = time.perf_counter()
    avail0 = as_mask(g, within)
    best, optimal, nodes, root_bound = _search(g, f, avail0, budget, accept, 0, target)
    if target is not None and len(best) >= target and root_bound > target:
        optimal = False
    covered = 0
    for c in best:
        covered |= c.mask
    scope = None if within is None else frozenset(iter_bits(avail0))
    tiling = Tiling(g, f, tuple(best), frozenset(iter_bits(avail0 & ~covered)), scope)
    return SolveOutcome(
        tiling=tiling,
        optimal=optimal,
        nodes=nodes,
        wall_time=time.perf_counter() - start,
        upper_bound=len(best) if optimal else root_bound,
    )


def has_factor(g: Graph, f: Pattern, budget: int = DEFAULT_BUDGET, *, within=None) -> str:
    """``"yes"``, ``"no"`` or ``"unknown"`` (budget exhausted)."""
    avail = as_mask(g, within)
    n = avail.bit_count()
    if n == 0:
        return "yes"
    if n % f.k:
        return "no"
    want = n // f.k
    best, optimal, _, _ = _search(g, f, avail, budget, None, want - 1, want, cover_all=True)
    if len(best) >= want:
        return "yes"
    return "no" if optimal else "unknown"


def factor(g: Graph, f: Pattern, budget: int = DEFAULT_BUDGET, *, within=None) -> list[PatternCopy] | None:
    """An explicit F-factor of ``g[within]``, or None if none was found."""
    avail = as_mask(g, within)
    n = avail.bit_count()
    if n == 0:
        return []
    if n % f.k:
        return None
    want = n // f.k
    best, _, _, _ = _search(g, f, avail, budget, None, want - 1, want, cover_all=True)
    return best if len(best) >= want else None


@dataclass(frozen=True)
class QuasiperfectGap:
    uncovered: int
    allowance: int
    quasiperfect: bool | None
    optimal: bool
    copies: int


def allowance(eta, k: int) -> int:
    eta = Fraction(eta)
    if not 0 < eta <= 1:
        raise ValueError("eta must lie in (0, 1]")
    return math.floor(1 / eta) * (k - 1)


def quasiperfect_gap(g: Graph, f: Pattern, eta, budget: int = DEFAULT_BUDGET) -> QuasiperfectGap:
    """Uncovered count of a maximum tiling against the allowance floor(1/eta)(k-1).

    When the solver runs out of budget the verdict is still True if the
    tiling already found fits the allowance; otherwise it is None.
    """
    out = max_tiling(g, f, budget)
    uncovered = g.n - f.k * out.copies
    allow = allowance(eta, f.k)
    if uncovered <= allow:
        verdict: bool | None = True
    elif out.optimal:
        verdict = False
    else:
        verdict = None
    return QuasiperfectGap(uncovered, allow, verdict, out.optimal, out.copies)
