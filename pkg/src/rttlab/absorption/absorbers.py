"""Absorbers: sets A with F-factors on both G[A] and G[A + S]."""

from __future__ import annotations

from itertools import permutations

from ..graph import Graph, as_mask, iter_bits, to_mask
from ..patterns import Pattern, copies_containing, spans_copy
from ..tiling import has_factor
from .partition import VertexPartition
from .reachability import find_connector, robust_vector_certificate


def verify_absorber(g: Graph, f: Pattern, s, a, t: int = 1, budget: int = 10**6) -> bool | None:
    """True, False, or None when the factor solver ran out of budget."""
    sm, am = to_mask(s), to_mask(a)
    if sm.bit_count() != f.k:
        raise ValueError(f"S must have exactly k={f.k} vertices")
    if sm & am:
        raise ValueError("absorber must be disjoint from S")
    if am.bit_count() > f.k * f.k * t:
        raise ValueError(f"absorbers have at most k^2 t = {f.k * f.k * t} vertices")
    first = has_factor(g, f, budget, within=list(iter_bits(am)))
    if first == "no":
        return False
    second = has_factor(g, f, budget, within=list(iter_bits(am | sm)))
    if second == "no":
        return False
    if first == "unknown" or second == "unknown":
        return None
    return True


def proof_absorber(
    g: Graph, f: Pattern, s, t: int, avoid: int, partition: VertexPartition | None = None
) -> int | None:
    """Twin copy T with the same index vector, plus one connector per pair (s_i, t_i).

    G[A] splits as the connectors with their t_i, and G[A + S] as T together
    with the connectors and their s_i.  Returns the absorber as a bitmask.
    """
    p = partition or VertexPartition.trivial(g)
    sm = to_mask(s)
    svec = p.index_vector(sm)
    blocked = avoid | sm
    cert = robust_vector_certificate(
        g, f, p, svec, target=None, avoid=iter_bits(blocked)
    )
    svs = sorted(iter_bits(sm))
    for twin in cert.copies:
        tvs = sorted(iter_bits(twin.mask))
        # pair s_i with t_i inside the same part
        for perm in _part_respecting(p, svs, tvs):
            used = blocked | twin.mask
            absorber = twin.mask
            ok = True
            for si, ti in zip(svs, perm):
                c = find_connector(g, f, si, ti, t, avoid=used)
                if c is None:
                    ok = False
                    break
                used |= c
                absorber |= c
            if ok:
                return absorber
    return None


def _part_respecting(p: VertexPartition, svs: list[int], tvs: list[int]):
    seen = set()
    for perm in permutations(tvs):
        if all(p.part_of(a) == p.part_of(b) for a, b in zip(svs, perm)) and perm not in seen:
            seen.add(perm)
            yield perm
            if len(seen) >= 6:
                return


def compact_absorber(g: Graph, f: Pattern, s, avoid: int, attempts: int = 200) -> int | None:
    """A single copy T (k vertices) such that G[T + S] also has an F-factor."""
    sm = to_mask(s)
    allowed = g.full_mask & ~avoid & ~sm
    tried = 0
    for v in iter_bits(allowed):
        for c in copies_containing(g, f, v, allowed & ~((1 << v) - 1)):
            tried += 1
            if has_factor(g, f, within=list(iter_bits(c.mask | sm))) == "yes":
                return c.mask
            if tried >= attempts:
                return None
    return None


def find_absorber(
    g: Graph, f: Pattern, s, t: int = 1, avoid=None, partition: VertexPartition | None = None
) -> frozenset[int] | None:
    """Smallest absorber found: empty if S spans F, then one copy, then proof-style."""
    av = as_mask(g, avoid) if avoid is not None else 0
    if spans_copy(g, f, list(s)):
        return frozenset()
    c = compact_absorber(g, f, s, av)
    if c is None:
        c = proof_absorber(g, f, s, t, av, partition)
    if c is None:
        return None
    return frozenset(iter_bits(c))


def find_disjoint_absorbers(
    g: Graph,
    f: Pattern,
    p: VertexPartition,
    s,
    t: int = 1,
    target: int | None = None,
    *,
    avoid=None,
) -> list[frozenset[int]]:
    """Pairwise disjoint proof-style absorbers for S, each verified."""
    sm = to_mask(s)
    if sm.bit_count() != f.k:
        raise ValueError("S must have k vertices")
    used = as_mask(g, avoid) if avoid is not None else 0
    found: list[frozenset[int]] = []
    if target is None:
        target = g.n
    while len(found) < target:
        a = proof_absorber(g, f, s, t, used, p)
        if a is None:
            break
        if verify_absorber(g, f, iter_bits(sm), iter_bits(a), t) is not True:  # pragma: no cover
            raise AssertionError("assembled absorber failed verification")
        found.append(frozenset(iter_bits(a)))
        used |= a
    return found
