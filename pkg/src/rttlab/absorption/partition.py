"""Vertex partitions and index vectors."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..errors import HostMismatchError
from ..graph import Graph, VertexSet, as_mask, iter_bits


@dataclass(frozen=True, order=True)
class IndexVector:
    coords: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coords):
            raise ValueError("index vectors have nonnegative coordinates")

    @classmethod
    def unit(cls, size: int, i: int) -> "IndexVector":
        return cls(tuple(int(j == i) for j in range(size)))

    @property
    def total(self) -> int:
        return sum(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def difference(self, other: "IndexVector") -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.coords, other.coords))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


def k_vectors(size: int, k: int) -> list[IndexVector]:
    """All vectors of length ``size`` with nonnegative entries summing to k."""
    out = []
    # stars and bars, in lexicographically decreasing order
    for bars in combinations(range(k + size - 1), size - 1):
        prev = -1
        coords = []
        for b in bars + (k + size - 1,):
            coords.append(b - prev - 1)
            prev = b
        out.append(IndexVector(tuple(coords)))
    out.sort(reverse=True)
    return out


def transferral(a: IndexVector, b: IndexVector) -> tuple[int, int] | None:
    """``(i, j)`` with a - b = u_i - u_j, or None."""
    diff = a.difference(b)
    plus = [i for i, x in enumerate(diff) if x == 1]
    minus = [i for i, x in enumerate(diff) if x == -1]
    if len(plus) == 1 and len(minus) == 1 and sum(abs(x) for x in diff) == 2:
        return plus[0], minus[0]
    return None


class VertexPartition:
    """Disjoint nonempty parts covering the host; parts are kept ordered by least vertex."""

    def __init__(self, host: Graph, parts):
        masks = [as_mask(host, p) if not isinstance(p, int) else p for p in parts]
        union = 0
        for m in masks:
            if not m:
                raise ValueError("parts must be nonempty")
            if m & union:
                raise ValueError("parts must be disjoint")
            union |= m
        if union != host.full_mask:
            raise ValueError("parts must cover every vertex")
        masks.sort(key=lambda m: m & -m)
        self.host = host
        self.masks = tuple(masks)
        self._owner = {}
        for i, m in enumerate(masks):
            for v in iter_bits(m):
                self._owner[v] = i

    @classmethod
    def trivial(cls, host: Graph) -> "VertexPartition":
        return cls(host, [host.full_mask])

    @property
    def parts(self) -> tuple[VertexSet, ...]:
        return tuple(VertexSet(self.host, iter_bits(m)) for m in self.masks)

    @property
    def C(self) -> int:
        return len(self.masks)

    def part_of(self, v: int) -> int:
        return self._owner[v]

    def index_vector(self, s) -> IndexVector:
        if isinstance(s, VertexSet) and s.host is not self.host and s.host != self.host:
            raise HostMismatchError("vertex set belongs to a different host graph")
        mask = s if isinstance(s, int) else as_mask(self.host, s)
        return IndexVector(tuple((mask & m).bit_count() for m in self.masks))

    def merge(self, i: int, j: int) -> "VertexPartition":
        masks = [m for x, m in enumerate(self.masks) if x not in (i, j)]
        masks.append(self.masks[i] | self.masks[j])
        return VertexPartition(self.host, masks)

    def as_lists(self) -> list[list[int]]:
        return [list(iter_bits(m)) for m in self.masks]

    def __eq__(self, other) -> bool:
        return isinstance(other, VertexPartition) and self.host == other.host and self.masks == other.masks

    def __hash__(self) -> int:
        return hash(self.masks)

    def __repr__(self) -> str:
        return f"VertexPartition(C={self.C}, sizes={[m.bit_count() for m in self.masks]})"


def index_vector(p: VertexPartition, s) -> IndexVector:
    return p.index_vector(s)
