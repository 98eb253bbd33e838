"""Exact r-independence number and r-partite hole number."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceError
from .graph import Graph, VertexSet, iter_bits, lowest_bit, max_clique

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class IndependenceReport:
    r: int
    value: int
    witness: VertexSet | tuple[VertexSet, ...]
    exact: bool


class _Out(Exception):
    pass


def clique_in(adj, size: int, allowed: int, need: int = 0) -> list[int] | None:
    """A clique of ``size`` vertices inside ``allowed`` meeting ``need`` (if nonzero)."""
    if size <= 0:
        return []

    def grow(clique: list[int], p: int) -> list[int] | None:
        left = size - len(clique)
        if left == 0:
            return clique
        while p.bit_count() >= left:
            v = lowest_bit(p)
            p &= p - 1
            hit = grow(clique + [v], p & adj[v])
            if hit is not None:
                return hit
        return None

    if not need:
        return grow([], allowed)
    # anchor on the need-vertices one at a time so each clique is found once
    p = allowed
    for v in iter_bits(need & allowed):
        hit = grow([v], p & adj[v])
        if hit is not None:
            return hit
        p &= ~(1 << v)
    return None


def is_kr_free(g: Graph, r: int, mask: int) -> bool:
    return clique_in(g.adj, r, mask) is None


def _alpha2(g: Graph, budget: int) -> tuple[int, bool]:
    comp = g.complement()
    try:
        best, _ = max_clique(comp, budget=budget)
        return _mask(best), True
    except ResourceError as err:
        return _mask(err.witness or []), False


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _greedy_kr_free(g: Graph, r: int, base: int, pool: int) -> int:
    """Extend ``base`` greedily by vertices of ``pool`` (low degree first)."""
    adj = g.adj
    cur = base
    for v in sorted(iter_bits(pool), key=lambda x: ((adj[x] & pool).bit_count(), x)):
        if clique_in(adj, r - 1, cur & adj[v]) is None:
            cur |= 1 << v
    return cur


def _alpha_r_bb(g: Graph, r: int, budget: int) -> tuple[int, bool]:
    """Branch and bound: a K_r forces one of its undecided vertices out."""
    adj = g.adj
    best = _greedy_kr_free(g, r, 0, g.full_mask)
    best_size = best.bit_count()
    nodes = 0

    def packing(inside: int, p: int) -> tuple[int, list[int] | None]:
        """Greedy disjoint (on undecided part) K_r's; returns (count, first)."""
        count = 0
        first = None
        pool = p
        while True:
            q = clique_in(adj, r, inside | pool, need=pool)
            if q is None:
                return count, first
            if first is None:
                first = q
            count += 1
            for x in q:
                pool &= ~(1 << x)

    def rec(inside: int, p: int) -> None:
        nonlocal nodes, best, best_size
        nodes += 1
        if nodes > budget:
            raise _Out
        # drop undecided vertices that would close a K_r with the chosen set
        for v in iter_bits(p):
            if clique_in(adj, r - 1, inside & adj[v]) is not None:
                p &= ~(1 << v)
        if inside.bit_count() + p.bit_count() <= best_size:
            return
        lost, q = packing(inside, p)
        if q is None:
            best, best_size = inside | p, (inside | p).bit_count()
            return
        if inside.bit_count() + p.bit_count() - lost <= best_size:
            return
        free = [x for x in q if p >> x & 1]
        taken = 0
        for x in free:
            rec(inside | taken, p & ~(1 << x) & ~taken)
            if clique_in(adj, r - 1, (inside | taken) & adj[x]) is not None:
                break  # every later branch would hold x and close a K_r
            taken |= 1 << x

    try:
        rec(0, g.full_mask)
    except _Out:
        return best, False
    return best, True


def alpha_r(g: Graph, r: int, budget: int = DEFAULT_BUDGET) -> IndependenceReport:
    """Largest K_r-free vertex set; ``exact`` is False if the budget ran out."""
    if r < 2:
        raise ValueError("r must be at least 2")
    if g.n == 0:
        return IndependenceReport(r, 0, VertexSet(g), True)
    if clique_in(g.adj, r, g.full_mask) is None:
        wit, exact = g.full_mask, True
    elif r == 2:
        wit, exact = _alpha2(g, budget)
    else:
        wit, exact = _alpha_r_bb(g, r, budget)
    if not is_kr_free(g, r, wit):  # pragma: no cover - defensive
        raise AssertionError("alpha_r witness contains K_r")
    return IndependenceReport(r, wit.bit_count(), VertexSet(g, iter_bits(wit)), exact)


# ----------------------------------------------------------------------
# r-partite holes


def _transversal_free(adj, parts: list[int], i: int, v: int, r: int) -> bool:
    """Whether v may join part i without creating a transversal K_r."""
    others = [parts[j] for j in range(r) if j != i]

    def rec(idx: int, common: int) -> bool:
        if idx == len(others):
            return True
        c = common & others[idx]
        while c:
            x = lowest_bit(c)
            c &= c - 1
            if rec(idx + 1, common & adj[x]):
                return True
        return False

    return not rec(0, adj[v])


def _hole_exists(g: Graph, r: int, s: int, state: dict) -> list[int] | None:
    """Search for r disjoint s-sets with no transversal K_r."""
    adj = g.adj
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    n = g.n

    def rec(idx: int, parts: list[int]) -> list[int] | None:
        state["nodes"] += 1
        if state["nodes"] > state["budget"]:
            raise _Out
        sizes = [p.bit_count() for p in parts]
        if all(x >= s for x in sizes):
            return list(parts)
        left = n - idx
        if sum(max(0, s - x) for x in sizes) > left:
            return None
        if r == 2:
            # candidates for each side must avoid the other side's neighbourhood
            rest = 0
            for v in order[idx:]:
                rest |= 1 << v
            nb0 = 0
            for x in iter_bits(parts[1]):
                nb0 |= adj[x]
            nb1 = 0
            for x in iter_bits(parts[0]):
                nb1 |= adj[x]
            if sizes[0] + (rest & ~nb0).bit_count() < s or sizes[1] + (rest & ~nb1).bit_count() < s:
                return None
            if sizes[0] >= s and sizes[1] + (rest & ~nb1).bit_count() >= s:
                extra = list(iter_bits(rest & ~nb1))[: s - sizes[1]]
                return [parts[0], parts[1] | _mask(extra)]
            if sizes[1] >= s and sizes[0] + (rest & ~nb0).bit_count() >= s:
                extra = list(iter_bits(rest & ~nb0))[: s - sizes[0]]
                return [parts[0] | _mask(extra), parts[1]]
        if idx == n:
            return None
        v = order[idx]
        first_empty = next((i for i, x in enumerate(sizes) if x == 0), r)
        for i in range(r):
            if sizes[i] >= s:
                continue
            if i > first_empty:
                break  # parts are interchangeable: fill empty parts in order
            if not _transversal_free(adj, parts, i, v, r):
                continue
            parts[i] |= 1 << v
            hit = rec(idx + 1, parts)
            parts[i] &= ~(1 << v)
            if hit is not None:
                return hit
        return rec(idx + 1, parts)

    return rec(0, [0] * r)


def _greedy_hole(g: Graph, r: int) -> tuple[int, list[int]]:
    """Cheap lower bound: grow r parts round-robin while allowed."""
    best_s, best = 0, [0] * r
    for start in range(min(g.n, 8)):
        parts = [0] * r
        order = list(range(start, g.n)) + list(range(start))
        i = 0
        for v in order:
            sizes = [p.bit_count() for p in parts]
            i = min(range(r), key=lambda j: (sizes[j], j))
            if _transversal_free(g.adj, parts, i, v, r):
                parts[i] |= 1 << v
        s = min(p.bit_count() for p in parts)
        if s > best_s:
            best_s = s
            best = [_mask(list(iter_bits(p))[:s]) for p in parts]
    return best_s, best


def verify_hole(g: Graph, parts) -> bool:
    """No K_r with one vertex in each part, parts disjoint and equal-sized."""
    masks = [p if isinstance(p, int) else _mask(p) for p in parts]
    r = len(masks)
    for i in range(r):
        for j in range(i + 1, r):
            if masks[i] & masks[j]:
                return False
    if len({m.bit_count() for m in masks}) > 1:
        return False
    if masks[0].bit_count() == 0:
        return True
    return all(
        _transversal_free(g.adj, [m if j else 0 for j, m in enumerate(masks)], 0, v, r)
        for v in iter_bits(masks[0])
    )


def alpha_star_r(g: Graph, r: int, budget: int = DEFAULT_BUDGET) -> IndependenceReport:
    """Largest s admitting an r-partite hole of size s."""
    if r < 2:
        raise ValueError("r must be at least 2")
    if r > g.n:
        raise ValueError("need at least r vertices")
    lo, wit = _greedy_hole(g, r)
    hi = g.n // r
    state = {"nodes": 0, "budget": budget}
    exact = True
    try:
        while lo < hi:
            mid = (lo + hi + 1) // 2
            found = _hole_exists(g, r, mid, state)
            if found is None:
                hi = mid - 1
            else:
                lo, wit = mid, [_mask(list(iter_bits(p))[:mid]) for p in found]
    except _Out:
        exact = False
    if not verify_hole(g, wit):  # pragma: no cover - defensive
        raise AssertionError("hole witness failed verification")
    parts = tuple(VertexSet(g, iter_bits(p)) for p in wit)
    return IndependenceReport(r, lo, parts, exact)
