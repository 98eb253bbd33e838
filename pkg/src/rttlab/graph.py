"""Host graphs as rows of integer bitmasks.

Vertex ``v`` is bit ``1 << v``; ``adj[v]`` is the bitmask of its neighbours,
so common neighbourhoods are a single ``&``.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Iterator

from .errors import EmptyGraphError, HostMismatchError, ResourceError

DEFAULT_CLIQUE_BUDGET = 10**7


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """Immutable simple undirected graph on ``0..n-1``."""

    __slots__ = ("n", "adj", "label", "_edges")

    def __init__(self, n: int, adj: Iterable[int], label: str | None = None):
        self.n = n
        self.adj = tuple(adj)
        self.label = label
        self._edges = None
        if len(self.adj) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(self.adj)}")
        full = (1 << n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside [0, {n})")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], label: str | None = None) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        g = cls.__new__(cls)
        g.n, g.adj, g.label, g._edges = n, tuple(rows), label, None
        return g

    @classmethod
    def _trusted(cls, n: int, rows, label=None) -> "Graph":
        g = cls.__new__(cls)
        g.n, g.adj, g.label, g._edges = n, tuple(rows), label, None
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls._trusted(n, [full ^ (1 << v) for v in range(n)], label=f"K{n}")

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls._trusted(n, [0] * n, label=f"E{n}")

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)], label=f"C{n}")

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)], label=f"P{n}")

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)], label=f"K1,{leaves}")

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)], label=f"K{a},{b}")

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner, label="petersen")

    # ------------------------------------------------------------------
    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        if self._edges is None:
            self._edges = [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]
        return self._edges

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def common_neighbors(self, u: int, v: int) -> int:
        return self.adj[u] & self.adj[v]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, plus the table mapping new index -> old index."""
        keep = sorted(set(vertices))
        index = {old: new for new, old in enumerate(keep)}
        rows = []
        for old in keep:
            row = 0
            for u in iter_bits(self.adj[old]):
                j = index.get(u)
                if j is not None:
                    row |= 1 << j
            rows.append(row)
        return Graph._trusted(len(keep), rows, label=self.label), keep

    def delete(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def union(self, other: "Graph", label: str | None = None) -> "Graph":
        if other.n != self.n:
            raise HostMismatchError(f"cannot overlay graphs on {self.n} and {other.n} vertices")
        return Graph._trusted(self.n, [a | b for a, b in zip(self.adj, other.adj)], label=label)

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph._trusted(self.n, [full & ~row & ~(1 << v) for v, row in enumerate(self.adj)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        tag = f" {self.label!r}" if self.label else ""
        return f"<Graph{tag} n={self.n} m={self.num_edges}>"


class VertexSet(frozenset):
    """A frozenset of vertices that remembers its host graph."""

    def __new__(cls, host: Graph, members: Iterable[int] = ()):
        obj = super().__new__(cls, members)
        for v in obj:
            if not 0 <= v < host.n:
                raise HostMismatchError(f"vertex {v} not in host on {host.n} vertices")
        obj.host = host
        return obj

    @property
    def mask(self) -> int:
        return to_mask(self)

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self)})"


def as_mask(g: Graph, s) -> int:
    """Bitmask of ``s`` (a VertexSet, iterable of vertices, or None for V)."""
    if s is None:
        return g.full_mask
    if isinstance(s, VertexSet) and s.host is not g and s.host != g:
        raise HostMismatchError("vertex set belongs to a different host graph")
    mask = 0
    for v in s:
        if not 0 <= v < g.n:
            raise HostMismatchError(f"vertex {v} not in host on {g.n} vertices")
        mask |= 1 << v
    return mask


# ----------------------------------------------------------------------
# elementary statistics


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise EmptyGraphError("minimum degree of the empty graph is undefined")
    return min(g.degrees())


def edges_between(g: Graph, a, b) -> int:
    """Edges with one end in ``a`` and the other in ``b``.

    An edge inside ``a & b`` is counted twice, so ``edges_between(g, V, V)``
    is ``2 e(G)``.
    """
    ma, mb = as_mask(g, a), as_mask(g, b)
    return sum((g.adj[v] & mb).bit_count() for v in iter_bits(ma))


def _bfs_cycle(g: Graph, root: int, best: float, allowed: int):
    """Shortest cycle through BFS from ``root`` that beats ``best``.

    Returns ``(length, (u, w, parent, root))`` or None.
    """
    dist = {root: 0}
    parent = {root: -1}
    queue = deque([root])
    found = None
    while queue:
        u = queue.popleft()
        if 2 * dist[u] + 1 >= best:
            break
        for w in iter_bits(g.adj[u] & allowed):
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
            elif parent[u] != w:
                length = dist[u] + dist[w] + 1
                if length < best:
                    best = length
                    found = (length, (u, w, dict(parent)))
    return found


def shortest_cycle(g: Graph, within=None) -> list[int] | None:
    """Vertices of one shortest cycle of ``g[within]``, or None if acyclic."""
    allowed = as_mask(g, within)
    best = math.inf
    witness = None
    for root in iter_bits(allowed):
        hit = _bfs_cycle(g, root, best, allowed)
        if hit is not None:
            best, witness = hit[0], hit[1]
            if best == 3:
                break
    if witness is None:
        return None
    u, w, parent = witness
    left, right = [u], [w]
    while parent[left[-1]] != -1:
        left.append(parent[left[-1]])
    while parent[right[-1]] != -1:
        right.append(parent[right[-1]])
    # trim the shared tail back to the lowest common ancestor
    while len(left) > 1 and len(right) > 1 and left[-2] == right[-2]:
        left.pop()
        right.pop()
    cycle = left + right[-2::-1]
    return cycle


def girth(g: Graph) -> float:
    """Length of a shortest cycle; ``math.inf`` marks an acyclic graph."""
    cycle = shortest_cycle(g)
    return math.inf if cycle is None else len(cycle)


# ----------------------------------------------------------------------
# maximum clique: branch and bound with a greedy colouring bound


def _colour_order(adj, cand: int) -> tuple[list[int], list[int]]:
    order: list[int] = []
    bounds: list[int] = []
    colour = 0
    uncoloured = cand
    while uncoloured:
        colour += 1
        q = uncoloured
        while q:
            v = lowest_bit(q)
            bit = 1 << v
            uncoloured &= ~bit
            q &= ~bit & ~adj[v]
            order.append(v)
            bounds.append(colour)
    return order, bounds


def max_clique(g: Graph, within=None, budget: int = DEFAULT_CLIQUE_BUDGET, lower: int = 0):
    """Exact maximum clique of ``g[within]``.

    Returns ``(clique_vertices, nodes)``.  Raises ResourceError once more
    than ``budget`` search nodes are expanded; the error carries the best
    clique seen and the root colouring bound.
    """
    adj = g.adj
    cand = as_mask(g, within)
    best: list[int] = []
    best_size = lower
    nodes = 0

    def expand(clique: list[int], p: int) -> None:
        nonlocal best, best_size, nodes
        nodes += 1
        if nodes > budget:
            raise _Stop
        order, bounds = _colour_order(adj, p)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[i] <= best_size:
                return
            v = order[i]
            clique.append(v)
            np_ = p & adj[v]
            if np_:
                expand(clique, np_)
            elif len(clique) > best_size:
                best_size = len(clique)
                best = sorted(clique)
            clique.pop()
            p &= ~(1 << v)

    root_bound = _colour_order(adj, cand)[1]
    root_bound = max(root_bound) if root_bound else 0
    try:
        if cand:
            expand([], cand)
    except _Stop:
        raise ResourceError(
            f"clique search exceeded {budget} nodes",
            lower=len(best),
            upper=root_bound,
            witness=best,
        ) from None
    return best, nodes


class _Stop(Exception):
    pass


def clique_number(g: Graph, budget: int = DEFAULT_CLIQUE_BUDGET) -> int:
    if g.n == 0:
        return 0
    clique, _ = max_clique(g, budget=budget)
    return len(clique)


def find_clique(g: Graph, size: int, within=None, containing: int | None = None) -> list[int] | None:
    """Some clique of exactly ``size`` vertices inside ``within`` (or None)."""
    adj = g.adj
    allowed = as_mask(g, within)
    if size <= 0:
        return []

    def grow(clique: list[int], p: int) -> list[int] | None:
        if len(clique) == size:
            return clique
        need = size - len(clique)
        while p and p.bit_count() >= need:
            v = lowest_bit(p)
            p &= ~(1 << v)
            hit = grow(clique + [v], p & adj[v])
            if hit is not None:
                return hit
        return None

    if containing is not None:
        if not allowed >> containing & 1:
            return None
        return grow([containing], allowed & adj[containing])
    return grow([], allowed)


def connected_components(g: Graph, within=None) -> list[int]:
    """Connected components of ``g[within]`` as bitmasks, ordered by least vertex."""
    remaining = as_mask(g, within)
    comps = []
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        remaining &= ~comp
    return comps
