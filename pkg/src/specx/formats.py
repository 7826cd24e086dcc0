"""graph6 / digraph6 / edge-list parsing and writing, plus DOT export.

graph6 encodes the upper triangle column-major, six bits per printable
byte (offset 63); digraph6 prefixes '&' and encodes the full row-major
bit matrix.  Writers emit the short size field only (n <= 62); parsers
accept the long forms as well.
"""

from __future__ import annotations

from .errors import GraphFormatError
from .graphs import Digraph, Graph

__all__ = [
    "parse_graph6",
    "write_graph6",
    "parse_digraph6",
    "write_digraph6",
    "parse_edge_list",
    "write_dot",
]


def _as_bytes(text: str | bytes) -> bytes:
    if isinstance(text, str):
        try:
            return text.encode("ascii")
        except UnicodeEncodeError as exc:
            raise GraphFormatError("non-ASCII input") from exc
    return bytes(text)


def _read_size(data: bytes, at: int) -> tuple[int, int]:
    """Decode the size field N(n) starting at ``at``; return (n, next offset)."""
    if at >= len(data):
        raise GraphFormatError("missing size field", offset=at)
    c = data[at]
    if not 63 <= c <= 126:
        raise GraphFormatError(f"byte {c} outside graph6 range 63..126", offset=at)
    if c != 126:
        return c - 63, at + 1
    if at + 1 < len(data) and data[at + 1] == 126:
        chunk, start = data[at + 2 : at + 8], at + 2
        width = 6
    else:
        chunk, start = data[at + 1 : at + 4], at + 1
        width = 3
    if len(chunk) != width:
        raise GraphFormatError("truncated long size field", offset=len(data))
    n = 0
    for i, c in enumerate(chunk):
        if not 63 <= c <= 126:
            raise GraphFormatError(f"byte {c} outside graph6 range 63..126", offset=start + i)
        n = (n << 6) | (c - 63)
    return n, start + width


def _unpack_bits(data: bytes, at: int, nbits: int) -> int:
    """Read ``nbits`` from six-bit groups; returns them as one big-endian int."""
    ngroups = (nbits + 5) // 6
    if len(data) - at < ngroups:
        raise GraphFormatError("truncated bit vector", offset=len(data))
    if len(data) - at > ngroups:
        raise GraphFormatError("trailing data after bit vector", offset=at + ngroups)
    acc = 0
    for i in range(ngroups):
        c = data[at + i]
        if not 63 <= c <= 126:
            raise GraphFormatError(f"byte {c} outside graph6 range 63..126", offset=at + i)
        acc = (acc << 6) | (c - 63)
    pad = ngroups * 6 - nbits
    if acc & ((1 << pad) - 1):
        raise GraphFormatError("nonzero padding bits", offset=at + ngroups - 1)
    return acc >> pad


def _pack_bits(value: int, nbits: int) -> bytes:
    ngroups = (nbits + 5) // 6
    value <<= ngroups * 6 - nbits
    out = bytearray()
    for i in range(ngroups - 1, -1, -1):
        out.append(((value >> (6 * i)) & 63) + 63)
    return bytes(out)


def parse_graph6(text: str | bytes) -> Graph:
    data = _as_bytes(text).strip()
    n, at = _read_size(data, 0)
    nbits = n * (n - 1) // 2
    bits = _unpack_bits(data, at, nbits)
    rows = [0] * n
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    pos = nbits
    for j in range(1, n):
        for i in range(j):
            pos -= 1
            if bits >> pos & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, rows)


def write_graph6(g: Graph) -> str:
    if g.n > 62:
        raise GraphFormatError(f"short-form graph6 writer supports n <= 62, got {g.n}")
    acc = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = (acc << 1) | (g.rows[i] >> j & 1)
    nbits = g.n * (g.n - 1) // 2
    return chr(g.n + 63) + _pack_bits(acc, nbits).decode("ascii")


def parse_digraph6(text: str | bytes) -> Digraph:
    data = _as_bytes(text).strip()
    if not data or data[0] != ord("&"):
        raise GraphFormatError("digraph6 input must start with '&'", offset=0)
    n, at = _read_size(data, 1)
    nbits = n * n
    bits = _unpack_bits(data, at, nbits)
    rows = [0] * n
    pos = nbits
    for i in range(n):
        for j in range(n):
            pos -= 1
            if bits >> pos & 1:
                if i == j:
                    raise GraphFormatError(f"loop bit set at vertex {i}", offset=at)
                rows[i] |= 1 << j
    return Digraph(n, rows)


def write_digraph6(d: Digraph) -> str:
    if d.n > 62:
        raise GraphFormatError(f"short-form digraph6 writer supports n <= 62, got {d.n}")
    acc = 0
    for i in range(d.n):
        row = d.rows[i]
        for j in range(d.n):
            acc = (acc << 1) | (row >> j & 1)
    return "&" + chr(d.n + 63) + _pack_bits(acc, d.n * d.n).decode("ascii")


def parse_edge_list(
    text: str, directed: bool = False, strict: bool = False
) -> Graph | Digraph:
    """Parse whitespace-separated ``u v`` lines.

    An optional ``n=<k>`` header fixes the vertex count; otherwise it is
    the largest label plus one.  ``#`` starts a comment.  Duplicate edges
    are collapsed unless ``strict`` is set.
    """
    n_header: int | None = None
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            try:
                n_header = int(line[2:])
            except ValueError:
                raise GraphFormatError(f"bad header {line!r}", line=lineno) from None
            if n_header < 0:
                raise GraphFormatError("negative vertex count in header", line=lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer label in {line!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"negative label in {line!r}", line=lineno)
        if u == v:
            raise GraphFormatError(f"self-loop {u} {v}", line=lineno)
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            if strict:
                raise GraphFormatError(f"duplicate edge {u} {v}", line=lineno)
            continue
        seen.add(key)
        pairs.append((u, v))
    n = n_header if n_header is not None else (max((max(u, v) for u, v in pairs), default=-1) + 1)
    if pairs and n <= max(max(u, v) for u, v in pairs):
        raise GraphFormatError(f"header n={n} smaller than largest label")
    if directed:
        return Digraph.from_arcs(n, pairs)
    return Graph.from_edges(n, pairs)


def write_dot(g: Graph | Digraph, name: str = "G") -> str:
    """DOT text with one statement per vertex and per edge/arc."""
    directed = isinstance(g, Digraph)
    head = "digraph" if directed else "graph"
    sep = "->" if directed else "--"
    lines = [f"{head} {name} {{"]
    for v in range(g.n):
        lines.append(f"  {v};")
    items = g.arcs() if directed else g.edges()
    for u, v in items:
        lines.append(f"  {u} {sep} {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
