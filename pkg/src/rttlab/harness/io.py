"""Graph text formats: header-free graph6 and a plain ``n m`` edge list."""

from __future__ import annotations

from pathlib import Path

from ..errors import ParseError
from ..graph import Graph

FORMATS = ("graph6", "edgelist")
_SUFFIX = {".g6": "graph6", ".graph6": "graph6", ".txt": "edgelist", ".edges": "edgelist", ".el": "edgelist"}


# ----------------------------------------------------------------------
# graph6


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"n={n} is too large for graph6")


def to_graph6(g: Graph) -> str:
    """Standard graph6 string (no header, no newline)."""
    n = g.n
    out = [_encode_n(n)]
    acc = bits = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            bits += 1
            if bits == 6:
                out.append(chr(acc + 63))
                acc = bits = 0
    if bits:
        out.append(chr((acc << (6 - bits)) + 63))
    return "".join(out)


def _decode_n(data: bytes) -> tuple[int, int]:
    def six(i: int) -> int:
        if i >= len(data):
            raise ParseError("truncated graph6 size field", position=i)
        c = data[i]
        if not 63 <= c <= 126:
            raise ParseError(f"byte {c!r} is outside the graph6 range", position=i)
        return c - 63

    first = six(0)
    if first < 63:
        return first, 1
    if len(data) > 1 and data[1] == 126:
        n = 0
        for i in range(2, 8):
            n = (n << 6) | six(i)
        return n, 8
    n = 0
    for i in range(1, 4):
        n = (n << 6) | six(i)
    return n, 4


def from_graph6(text: str | bytes, label: str | None = None) -> Graph:
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        raise ParseError("graph6 headers are not accepted", position=0)
    if not data:
        raise ParseError("empty graph6 string", position=0)
    n, start = _decode_n(data)
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[start:]
    if len(body) != need:
        raise ParseError(f"expected {need} edge bytes for n={n}, found {len(body)}", position=start + min(len(body), need))
    rows = [0] * n
    i, j = 0, 1
    total = n * (n - 1) // 2
    seen = 0
    for pos, c in enumerate(body, start):
        if not 63 <= c <= 126:
            raise ParseError(f"byte {c!r} is outside the graph6 range", position=pos)
        val = c - 63
        for s in range(5, -1, -1):
            if seen == total:
                if val & ((1 << (s + 1)) - 1):
                    raise ParseError("nonzero padding bits", position=pos)
                break
            if val >> s & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            seen += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph._trusted(n, rows, label=label)


# ----------------------------------------------------------------------
# edge list


def to_edgelist(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def from_edgelist(text: str, label: str | None = None) -> Graph:
    """Parse ``n m`` followed by m lines ``u v`` with 0 <= u < v < n."""
    lines = text.splitlines()
    offsets = []
    pos = 0
    for ln in lines:
        offsets.append(pos)
        pos += len(ln.encode()) + 1
    body = [(i, ln) for i, ln in enumerate(lines) if ln.strip()]
    if not body:
        raise ParseError("empty edge list", line=1, position=0)

    def ints(idx: int, ln: str) -> tuple[int, int]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {ln.strip()!r}", line=idx + 1, position=offsets[idx])
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer token in {ln.strip()!r}", line=idx + 1, position=offsets[idx]) from None

    head_idx, head = body[0]
    n, m = ints(head_idx, head)
    if n < 0 or m < 0:
        raise ParseError("n and m must be nonnegative", line=head_idx + 1, position=offsets[head_idx])
    if len(body) - 1 != m:
        where = body[m + 1][0] + 1 if len(body) - 1 > m else len(lines) + 1
        raise ParseError(f"header promises {m} edges, found {len(body) - 1}", line=where)
    rows = [0] * n
    for idx, ln in body[1:]:
        u, v = ints(idx, ln)
        if not 0 <= u < v < n:
            raise ParseError(f"edge {u} {v} needs 0 <= u < v < {n}", line=idx + 1, position=offsets[idx])
        if rows[u] >> v & 1:
            raise ParseError(f"duplicate edge {u} {v}", line=idx + 1, position=offsets[idx])
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._trusted(n, rows, label=label)


# ----------------------------------------------------------------------
# files


def guess_format(path, fmt: str | None = None) -> str:
    if fmt:
        if fmt not in FORMATS:
            raise ValueError(f"unknown graph format {fmt!r}; choose from {FORMATS}")
        return fmt
    return _SUFFIX.get(Path(path).suffix.lower(), "edgelist")


def dumps(g: Graph, fmt: str = "graph6") -> str:
    fmt = guess_format("", fmt)
    return to_graph6(g) + "\n" if fmt == "graph6" else to_edgelist(g)


def loads(text: str, fmt: str = "graph6", label: str | None = None) -> Graph:
    fmt = guess_format("", fmt)
    return from_graph6(text, label) if fmt == "graph6" else from_edgelist(text, label)


def read_graph(path, fmt: str | None = None) -> Graph:
    p = Path(path)
    return loads(p.read_text(encoding="ascii"), guess_format(p, fmt), label=p.name)


def write_graph(g: Graph, path, fmt: str | None = None) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(dumps(g, guess_format(p, fmt)), encoding="ascii")
    return p
