"""Fans, connectors, reachability and robustness certificates."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import CertificateError, HostMismatchError
from ..graph import Graph, as_mask, iter_bits, to_mask
from ..patterns import Pattern, PatternCopy, copies_containing, embed_pattern_at, find_copy_at, is_copy, spans_copy
from ..tiling import has_factor, max_tiling
from .partition import IndexVector, VertexPartition


def build_fan(g: Graph, f: Pattern, v: int, u=None, alpha_bound: int = 0) -> list[frozenset[int]]:
    """A maximal greedy F-fan at ``v`` inside ``u``."""
    allowed = as_mask(g, u) & ~(1 << v)
    fan = []
    while True:
        if f.kind in ("tree", "cycle", "clique"):
            c = embed_pattern_at(g, f, v, iter_bits(allowed), alpha_bound)
        else:
            c = find_copy_at(g, f, v, iter_bits(allowed))
        if c is None:
            return fan
        rest = c.mask & ~(1 << v)
        fan.append(frozenset(iter_bits(rest)))
        allowed &= ~rest


def is_connector(g: Graph, f: Pattern, s, u: int, v: int, t: int | None = None) -> bool | None:
    """Both G[S + u] and G[S + v] have F-factors (None if undecided)."""
    mask = to_mask(s)
    if mask >> u & 1 or mask >> v & 1:
        return False
    if t is not None and mask.bit_count() > f.k * t - 1:
        return False
    a = has_factor(g, f, within=list(iter_bits(mask | 1 << u)))
    if a == "no":
        return False
    b = has_factor(g, f, within=list(iter_bits(mask | 1 << v)))
    if b == "no":
        return False
    return True if a == b == "yes" else None


@dataclass(frozen=True)
class ReachabilityCertificate:
    host: Graph = field(repr=False)
    pattern: Pattern
    u: int
    v: int
    t: int
    connectors: tuple[frozenset[int], ...]

    def __post_init__(self):
        used = 0
        for s in self.connectors:
            m = to_mask(s)
            if m & used:
                raise CertificateError("connectors overlap")
            used |= m
            if self.u != self.v and is_connector(self.host, self.pattern, s, self.u, self.v, self.t) is not True:
                raise CertificateError(f"{sorted(s)} is not a connector for {self.u}, {self.v}")
            if self.u == self.v and is_connector(self.host, self.pattern, s, self.u, self.u, self.t) is not True:
                raise CertificateError(f"{sorted(s)} is not a connector for {self.u}")

    @property
    def strength(self) -> int:
        return len(self.connectors)

    def connector_avoiding(self, w) -> frozenset[int] | None:
        """A witness connector missing ``w``; exists whenever |w| < strength."""
        wm = to_mask(w)
        for s in self.connectors:
            if not to_mask(s) & wm:
                return s
        return None


def _direct_connectors(g: Graph, f: Pattern, u: int, v: int, allowed: int):
    """Sets S of size k-1 in ``allowed`` with F on S + u and on S + v."""
    if f.kind == "clique":
        for c in copies_containing(g, f, u, allowed & g.adj[v]):
            yield c.mask & ~(1 << u)
        return
    for c in copies_containing(g, f, u, allowed):
        rest = c.mask & ~(1 << u)
        if spans_copy(g, f, list(iter_bits(rest | 1 << v))):
            yield rest


def _chained(g: Graph, f: Pattern, u: int, v: int, links: int, allowed: int):
    """Connectors built from ``links`` direct connectors through middle vertices."""
    if links == 1:
        yield from _direct_connectors(g, f, u, v, allowed)
        return
    for w in iter_bits(allowed):
        inner = allowed & ~(1 << w)
        for s1 in _direct_connectors(g, f, u, w, inner & ~(1 << v)):
            for rest in _chained(g, f, w, v, links - 1, inner & ~s1):
                yield s1 | (1 << w) | rest


def find_connector(g: Graph, f: Pattern, u: int, v: int, t: int = 1, avoid: int = 0) -> int | None:
    """Smallest connector found for u, v avoiding ``avoid`` (bitmask)."""
    allowed = g.full_mask & ~avoid & ~(1 << u) & ~(1 << v)
    for links in range(1, t + 1):
        for s in _chained(g, f, u, v, links, allowed):
            return s
    return None


def find_disjoint_connectors(
    g: Graph, f: Pattern, u: int, v: int, t: int = 1, target: int | None = None, *, avoid=None
) -> ReachabilityCertificate:
    """Greedily collect pairwise disjoint connectors of size at most kt - 1."""
    if u == v:
        raise ValueError("u and v must differ")
    if target is None:
        target = g.n
    blocked = as_mask(g, avoid) if avoid is not None else 0
    found: list[frozenset[int]] = []
    for links in range(1, t + 1):
        while len(found) < target:
            allowed = g.full_mask & ~blocked & ~(1 << u) & ~(1 << v)
            s = next(_chained(g, f, u, v, links, allowed), None)
            if s is None:
                break
            found.append(frozenset(iter_bits(s)))
            blocked |= s
    return ReachabilityCertificate(g, f, u, v, t, tuple(found))


def concatenate_reachability(a: ReachabilityCertificate, b: ReachabilityCertificate) -> ReachabilityCertificate:
    """u-v and v-w certificates give a u-w certificate at t_a + t_b.

    Pairs S from ``a`` with S' from ``b`` through a middle vertex x (v
    first, then any unused vertex that works for both), giving S + x + S'.
    Input connectors that already connect u and w directly are also
    harvested; the larger of the two greedy orders is kept.
    """
    if a.host is not b.host and a.host != b.host:
        raise HostMismatchError("certificates live on different hosts")
    if a.v != b.u:
        raise ValueError(f"middle vertex mismatch: {a.v} != {b.u}")
    g, f = a.host, a.pattern
    u, w, t = a.u, b.v, a.t + b.t
    if u == w:
        return ReachabilityCertificate(g, f, u, u, t, a.connectors)
    ends = (1 << u) | (1 << w)

    def paired(used: int) -> list[frozenset[int]]:
        out = []
        spare = list(b.connectors)
        for s in a.connectors:
            sm = to_mask(s)
            if sm & (used | ends):
                continue
            for idx, s2 in enumerate(spare):
                m2 = to_mask(s2)
                if m2 & (used | ends | sm):
                    continue
                middles = [a.v] + [x for x in range(g.n) if x != a.v]
                for x in middles:
                    xb = 1 << x
                    if xb & (used | ends | sm | m2):
                        continue
                    cand = sm | xb | m2
                    if is_connector(g, f, iter_bits(cand), u, w, t):
                        out.append(frozenset(iter_bits(cand)))
                        used |= cand
                        spare.pop(idx)
                        break
                else:
                    continue
                break
        return out

    def direct(used: int) -> list[frozenset[int]]:
        out = []
        for s in a.connectors + b.connectors:
            sm = to_mask(s)
            if sm & (used | ends):
                continue
            if is_connector(g, f, s, u, w, t):
                out.append(s)
                used |= sm
        return out

    def combine(first, second) -> list[frozenset[int]]:
        one = first(0)
        used = 0
        for s in one:
            used |= to_mask(s)
        return one + second(used)

    plan_a = combine(paired, direct)
    plan_b = combine(direct, paired)
    best = plan_a if len(plan_a) >= len(plan_b) else plan_b
    return ReachabilityCertificate(g, f, u, w, t, tuple(best))


@dataclass(frozen=True)
class RobustnessCertificate:
    partition: VertexPartition = field(repr=False)
    pattern: Pattern
    vector: IndexVector
    copies: tuple[PatternCopy, ...]

    def __post_init__(self):
        used = 0
        g = self.partition.host
        for c in self.copies:
            if not is_copy(g, self.pattern, c.vertices):
                raise CertificateError(f"{c.vertices} is not a copy")
            if c.mask & used:
                raise CertificateError("witness copies overlap")
            used |= c.mask
            if self.partition.index_vector(c.mask) != self.vector:
                raise CertificateError(f"{c.vertices} does not realise {self.vector}")

    @property
    def strength(self) -> int:
        return len(self.copies)

    def copy_avoiding(self, w) -> PatternCopy | None:
        wm = to_mask(w)
        return next((c for c in self.copies if not c.mask & wm), None)


def robust_vector_certificate(
    g: Graph,
    f: Pattern,
    p: VertexPartition,
    vec: IndexVector,
    target: int | None = None,
    *,
    avoid=None,
    budget: int = 10**6,
) -> RobustnessCertificate:
    """Up to ``target`` disjoint copies whose index vector is ``vec``."""
    if p.host is not g and p.host != g:
        raise HostMismatchError("partition belongs to another host")
    if len(vec) != p.C or vec.total != f.k:
        raise ValueError(f"{vec} is not a k-vector for this partition")
    within = None if avoid is None else list(iter_bits(g.full_mask & ~as_mask(g, avoid)))
    out = max_tiling(
        g,
        f,
        budget,
        within=within,
        accept=lambda c: p.index_vector(c.mask) == vec,
        target=target,
    )
    return RobustnessCertificate(p, f, vec, out.tiling.copies)
