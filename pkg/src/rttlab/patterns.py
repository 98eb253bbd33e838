"""The tile F: parsing, automorphisms, copy enumeration and rooted embedding."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from collections.abc import Iterator

from .errors import PatternError, ResourceError
from .graph import Graph, as_mask, find_clique, iter_bits, lowest_bit

MAX_GAMMA_K = 16


@dataclass(frozen=True)
class Pattern:
    k: int
    edges: tuple[tuple[int, int], ...]
    name: str = ""

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v or not (0 <= u < self.k and 0 <= v < self.k):
                raise PatternError(f"bad pattern edge ({u}, {v}) for k={self.k}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if self.k < 1:
            raise PatternError("pattern needs at least one vertex")

    # -- constructors ---------------------------------------------------
    @classmethod
    def clique(cls, k: int) -> "Pattern":
        return cls(k, tuple(itertools.combinations(range(k), 2)), f"K{k}")

    @classmethod
    def cycle(cls, k: int) -> "Pattern":
        if k < 3:
            raise PatternError("cycles need k >= 3")
        return cls(k, tuple((i, (i + 1) % k) for i in range(k)), f"C{k}")

    @classmethod
    def path(cls, k: int) -> "Pattern":
        return cls(k, tuple((i, i + 1) for i in range(k - 1)), f"P{k}")

    @classmethod
    def star(cls, leaves: int) -> "Pattern":
        return cls(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)), f"K1,{leaves}")

    @classmethod
    def parse(cls, literal: str) -> "Pattern":
        """Parse ``K3``, ``C5``, ``P4``, ``K1,3`` or ``T:k=5;edges=0-1,1-2``."""
        text = literal.strip()
        m = re.fullmatch(r"K1,(\d+)", text)
        if m:
            return cls.star(int(m.group(1)))
        m = re.fullmatch(r"([KCP])(\d+)", text)
        if m:
            k = int(m.group(2))
            return {"K": cls.clique, "C": cls.cycle, "P": cls.path}[m.group(1)](k)
        m = re.fullmatch(r"([TG]):k=(\d+);edges=([0-9,\- ]*)", text)
        if m:
            k = int(m.group(2))
            edges = []
            for item in filter(None, (s.strip() for s in m.group(3).split(","))):
                a, _, b = item.partition("-")
                try:
                    edges.append((int(a), int(b)))
                except ValueError:
                    raise PatternError(f"bad edge {item!r} in {literal!r}") from None
            pat = cls(k, tuple(edges), text)
            if m.group(1) == "T" and pat.kind != "tree":
                raise PatternError(f"{literal!r} is not a tree")
            return pat
        raise PatternError(f"unrecognised pattern literal {literal!r}")

    # -- derived data ---------------------------------------------------
    @cached_property
    def adj(self) -> tuple[int, ...]:
        rows = [0] * self.k
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    @cached_property
    def graph(self) -> Graph:
        return Graph.from_edges(self.k, self.edges, label=self.name)

    @property
    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.k) - 1

    @cached_property
    def kind(self) -> str:
        k, m = self.k, len(self.edges)
        if m == k * (k - 1) // 2:
            return "clique"
        if not self.is_connected:
            return "general"
        if m == k - 1:
            return "tree"
        if m == k and all(row.bit_count() == 2 for row in self.adj):
            return "cycle"
        return "general"

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        k, adj = self.k, self.adj
        deg = [row.bit_count() for row in adj]
        found = []
        perm = [-1] * k
        used = 0

        def extend(i: int) -> None:
            nonlocal used
            if i == k:
                found.append(tuple(perm))
                return
            for img in range(k):
                if used >> img & 1 or deg[img] != deg[i]:
                    continue
                ok = True
                for j in range(i):
                    if (adj[i] >> j & 1) != (adj[img] >> perm[j] & 1):
                        ok = False
                        break
                if ok:
                    perm[i] = img
                    used |= 1 << img
                    extend(i + 1)
                    used &= ~(1 << img)
            perm[i] = -1

        extend(0)
        return tuple(found)

    @property
    def automorphism_count(self) -> int:
        return len(self.automorphisms)

    @cached_property
    def orbit_representatives(self) -> tuple[int, ...]:
        seen = set()
        reps = []
        for x in range(self.k):
            if x in seen:
                continue
            reps.append(x)
            seen.update(sigma[x] for sigma in self.automorphisms)
        return tuple(reps)

    @cached_property
    def search_order(self) -> tuple[int, ...]:
        """Pattern vertices ordered so each one touches as many earlier ones as possible."""
        order = []
        placed = 0
        remaining = set(range(self.k))
        while remaining:
            best = max(remaining, key=lambda x: ((self.adj[x] & placed).bit_count(), self.adj[x].bit_count(), -x))
            order.append(best)
            placed |= 1 << best
            remaining.discard(best)
        return tuple(order)

    def __str__(self) -> str:
        return self.name or f"G:k={self.k};edges=" + ",".join(f"{u}-{v}" for u, v in self.edges)


@dataclass(frozen=True)
class PatternCopy:
    """One unordered copy of F; ``vertices[i]`` is the image of pattern vertex ``i``."""

    vertices: tuple[int, ...]
    host: Graph | None = field(default=None, compare=False, repr=False)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m


def canonical_form(f: Pattern, phi: tuple[int, ...]) -> tuple[int, ...]:
    return min(tuple(phi[s] for s in sigma) for sigma in f.automorphisms)


def is_copy(g: Graph, f: Pattern, vertices) -> bool:
    """Direct check that ``vertices`` (pattern order) realise every pattern edge."""
    vs = tuple(vertices)
    if len(vs) != f.k or len(set(vs)) != f.k:
        return False
    return all(g.has_edge(vs[u], vs[v]) for u, v in f.edges)


# ----------------------------------------------------------------------
# gamma(F)


def _is_forest(k: int, edges, removed: int) -> bool:
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if removed >> u & 1 or removed >> v & 1:
            continue
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def gamma(f: Pattern) -> int:
    """Fewest vertices whose deletion leaves F acyclic."""
    if f.k > MAX_GAMMA_K:
        raise ResourceError(f"gamma is exhaustive; k={f.k} exceeds {MAX_GAMMA_K}")
    for size in range(f.k + 1):
        for subset in itertools.combinations(range(f.k), size):
            removed = 0
            for x in subset:
                removed |= 1 << x
            if _is_forest(f.k, f.edges, removed):
                return size
    return f.k


# ----------------------------------------------------------------------
# embeddings


def embeddings(g: Graph, f: Pattern, allowed: int, fixed: dict[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    """All injective edge-preserving maps V(F) -> allowed (subgraph semantics)."""
    adj, fadj = g.adj, f.adj
    phi = [-1] * f.k
    fixed = fixed or {}
    for x, v in fixed.items():
        phi[x] = v
    order = [x for x in f.search_order if x not in fixed]
    used = 0
    for v in fixed.values():
        used |= 1 << v
    for x, v in fixed.items():
        for y, w in fixed.items():
            if fadj[x] >> y & 1 and not adj[v] >> w & 1:
                return

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        nonlocal used
        if i == len(order):
            yield tuple(phi)
            return
        x = order[i]
        cand = allowed & ~used
        for y in iter_bits(fadj[x]):
            if phi[y] >= 0:
                cand &= adj[phi[y]]
        while cand:
            v = lowest_bit(cand)
            cand &= cand - 1
            phi[x] = v
            used |= 1 << v
            yield from rec(i + 1)
            used &= ~(1 << v)
        phi[x] = -1

    yield from rec(0)


def _clique_copies(g: Graph, k: int, allowed: int, start: int = 0) -> Iterator[tuple[int, ...]]:
    adj = g.adj

    def rec(clique: list[int], p: int) -> Iterator[tuple[int, ...]]:
        if len(clique) == k:
            yield tuple(clique)
            return
        need = k - len(clique)
        while p and p.bit_count() >= need:
            v = lowest_bit(p)
            p &= p - 1
            clique.append(v)
            yield from rec(clique, p & adj[v])
            clique.pop()

    yield from rec([], allowed)


def copies_containing(g: Graph, f: Pattern, v: int, allowed: int) -> Iterator[PatternCopy]:
    """Each copy of F through ``v`` with its other vertices in ``allowed``."""
    allowed = (allowed | (1 << v))
    if f.kind == "clique":
        nb = allowed & g.adj[v]
        for rest in _clique_copies(g, f.k - 1, nb):
            yield PatternCopy(tuple(sorted((v,) + rest)), g)
        return
    seen = set()
    for x in f.orbit_representatives:
        for phi in embeddings(g, f, allowed, {x: v}):
            canon = canonical_form(f, phi)
            if canon not in seen:
                seen.add(canon)
                yield PatternCopy(canon, g)


class CopyStream:
    """Iterator over copies; ``truncated`` reports whether the cap cut it short."""

    def __init__(self, source: Iterator[PatternCopy], cap: int | None):
        self._source = source
        self.cap = cap
        self.count = 0
        self.truncated = False
        self.finished = False

    def __iter__(self):
        return self

    def __next__(self) -> PatternCopy:
        if self.finished:
            raise StopIteration
        if self.cap is not None and self.count >= self.cap:
            self.finished = True
            try:
                next(self._source)
                self.truncated = True
            except StopIteration:
                pass
            raise StopIteration
        try:
            item = next(self._source)
        except StopIteration:
            self.finished = True
            raise
        self.count += 1
        return item


def _all_copies(g: Graph, f: Pattern, allowed: int) -> Iterator[PatternCopy]:
    if f.kind == "clique":
        for c in _clique_copies(g, f.k, allowed):
            yield PatternCopy(c, g)
        return
    for phi in embeddings(g, f, allowed):
        if canonical_form(f, phi) == phi:
            yield PatternCopy(phi, g)


def enumerate_copies(g: Graph, f: Pattern, within=None, cap: int | None = None) -> CopyStream:
    """Stream every unordered copy of F inside ``within`` exactly once."""
    return CopyStream(_all_copies(g, f, as_mask(g, within)), cap)


# ----------------------------------------------------------------------
# rooted embedding (fans, connectors)


def _core(g: Graph, mask: int, min_deg: int) -> int:
    """Peel vertices of degree < ``min_deg`` until none remain."""
    changed = True
    while changed and mask:
        changed = False
        for v in iter_bits(mask):
            if (g.adj[v] & mask).bit_count() < min_deg:
                mask &= ~(1 << v)
                changed = True
    return mask


def _greedy_tree(g: Graph, tree: Pattern, core: int) -> dict[int, int] | None:
    """Embed a tree into a subgraph of minimum degree >= tree.k - 1 leaf by leaf.

    Each vertex added is a neighbour of an embedded vertex; with min degree
    at least k-1 an unused neighbour always exists.
    """
    order = tree.search_order  # every vertex after the first touches an earlier one
    phi: dict[int, int] = {}
    used = 0
    for x in order:
        if not phi:
            v = lowest_bit(core)
        else:
            anchor = next(y for y in iter_bits(tree.adj[x]) if y in phi)
            cand = g.adj[phi[anchor]] & core & ~used
            if not cand:
                return None
            v = lowest_bit(cand)
        phi[x] = v
        used |= 1 << v
    return phi


def _sub_pattern(f: Pattern, drop: int) -> tuple[Pattern, list[int]]:
    keep = [x for x in range(f.k) if x != drop]
    index = {x: i for i, x in enumerate(keep)}
    edges = tuple((index[u], index[v]) for u, v in f.edges if drop not in (u, v))
    return Pattern(f.k - 1, edges, f"{f}-{drop}"), keep


def _constructive(g: Graph, f: Pattern, v: int, nb: int) -> tuple[int, ...] | None:
    if f.kind == "clique":
        rest = find_clique(g, f.k - 1, within=list(iter_bits(nb)))
        return None if rest is None else tuple(sorted([v] + rest))
    if f.kind == "cycle":
        # v closes a path on k-1 vertices found inside its neighbourhood
        path = Pattern.path(f.k - 1)
        core = _core(g, nb, path.k - 1)
        if not core:
            return None
        phi = _greedy_tree(g, path, core)
        if phi is None:
            return None
        return (v,) + tuple(phi[i] for i in range(path.k))
    if f.kind == "tree":
        for leaf in range(f.k):
            if f.adj[leaf].bit_count() != 1:
                continue
            rest, keep = _sub_pattern(f, leaf)
            core = _core(g, nb, rest.k - 1)
            if not core:
                continue
            phi = _greedy_tree(g, rest, core)
            if phi is None:
                continue
            out = [0] * f.k
            out[leaf] = v
            for i, x in enumerate(keep):
                out[x] = phi[i]
            return tuple(out)
    return None


def embed_pattern_at(
    g: Graph,
    f: Pattern,
    v: int,
    u,
    alpha_bound: int = 0,
    *,
    exhaustive: bool = True,
) -> PatternCopy | None:
    """A copy of F containing ``v`` with its other vertices in ``u``.

    The constructive route (clique search, core peeling plus greedy tree
    growth, path closing for cycles) is tried first; it is guaranteed to
    succeed once ``|N(v) & u| >= k * alpha_bound`` with ``alpha_bound``
    bounding the independence number.  Below that threshold, or if it
    fails, an exact backtracking search is used unless ``exhaustive`` is
    False.  Returns None only when no copy exists (or the search was
    disabled).
    """
    if f.kind not in ("tree", "cycle", "clique"):
        raise PatternError(f"embed_pattern_at needs a tree, cycle or clique, got {f.kind}")
    allowed = as_mask(g, u) & ~(1 << v)
    nb = allowed & g.adj[v]
    phi = _constructive(g, f, v, nb)
    if phi is not None:
        if not is_copy(g, f, phi):  # pragma: no cover - defensive
            raise AssertionError("constructive embedding produced a non-copy")
        return PatternCopy(canonical_form(f, phi), g)
    if not exhaustive:
        return None
    return next(copies_containing(g, f, v, allowed), None)


def find_copy_at(g: Graph, f: Pattern, v: int, u) -> PatternCopy | None:
    """Like embed_pattern_at but for any pattern kind."""
    if f.kind in ("tree", "cycle", "clique"):
        return embed_pattern_at(g, f, v, u)
    allowed = as_mask(g, u) & ~(1 << v)
    return next(copies_containing(g, f, v, allowed), None)


def spans_copy(g: Graph, f: Pattern, vertices) -> bool:
    """Whether the k given vertices contain a copy of F."""
    vs = list(vertices)
    if len(vs) != f.k:
        return False
    mask = 0
    for x in vs:
        mask |= 1 << x
    return next(copies_containing(g, f, vs[0], mask), None) is not None


def embed_tree(g: Graph, tree: Pattern, within=None) -> PatternCopy | None:
    """Greedy tree embedding inside the (k-1)-core; complete for k-chromatic hosts."""
    if tree.kind != "tree" and not (tree.k <= 2 and tree.is_connected):
        raise PatternError("embed_tree needs a tree pattern")
    core = _core(g, as_mask(g, within), tree.k - 1)
    if not core:
        return None
    phi = _greedy_tree(g, tree, core)
    if phi is None:
        return None
    return PatternCopy(canonical_form(tree, tuple(phi[i] for i in range(tree.k))), g)
