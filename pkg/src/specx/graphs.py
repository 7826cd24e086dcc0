"""Bitset-backed graph and digraph values plus isomorphism machinery.

Vertices are dense integers ``0..n-1``.  Adjacency is stored as one int
bitmask per vertex, which keeps the desk-scale inner loops (subset cuts,
BFS, partition refinement) in machine-word operations.  All values are
immutable after construction; every operation returns a fresh value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import PreconditionError

__all__ = [
    "Graph",
    "Digraph",
    "Isomorphism",
    "complete_graph",
    "empty_graph",
    "path_graph",
    "cycle_graph",
    "disjoint_union",
    "join",
    "complete_digraph",
    "digraph_union",
    "digraph_join",
    "one_way_join",
    "canonical_form",
    "canonical_permutation",
    "is_isomorphic",
    "canonical_form_digraph",
    "is_isomorphic_digraph",
]


def _bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph: symmetric, irreflexive bit relation."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(rows) != n:
            raise ValueError("row count does not match vertex count")
        rows = tuple(rows)
        full = (1 << n) - 1
        for u, row in enumerate(rows):
            if row & (1 << u):
                raise ValueError(f"self-loop at vertex {u}")
            if row & ~full:
                raise ValueError(f"row {u} references vertices >= {n}")
        for u, row in enumerate(rows):
            for v in _bits(row):
                if not rows[v] & (1 << u):
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    # -- queries ---------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return tuple(_bits(self.rows[u]))

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in _bits(self.rows[u] >> (u + 1) << (u + 1)):
                out.append((u, v))
        return out

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u in range(self.n):
            for v in _bits(self.rows[u]):
                a[u, v] = 1.0
        return a

    # -- derived graphs --------------------------------------------------

    def permute(self, pi: Sequence[int]) -> "Graph":
        """Relabel: vertex ``u`` becomes ``pi[u]``."""
        rows = [0] * self.n
        for u, row in enumerate(self.rows):
            acc = 0
            for v in _bits(row):
                acc |= 1 << pi[v]
            rows[pi[u]] = acc
        return Graph(self.n, rows)

    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabeled by ascending original label."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        rows = [0] * len(keep)
        for v in keep:
            acc = 0
            for w in _bits(self.rows[v]):
                if w in pos:
                    acc |= 1 << pos[w]
            rows[pos[v]] = acc
        return Graph(len(keep), rows)

    def delete_vertices(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return self.subgraph(v for v in range(self.n) if v not in drop)

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows)

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, rows)

    # -- plumbing --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count()})"

    def __reduce__(self):
        return (Graph, (self.n, self.rows))


class Digraph:
    """Directed graph: irreflexive arc relation, no parallel arcs."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(rows) != n:
            raise ValueError("row count does not match vertex count")
        rows = tuple(rows)
        full = (1 << n) - 1
        for u, row in enumerate(rows):
            if row & (1 << u):
                raise ValueError(f"loop at vertex {u}")
            if row & ~full:
                raise ValueError(f"row {u} references vertices >= {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Digraph is immutable")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        rows = [0] * n
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop ({u}, {v})")
            rows[u] |= 1 << v
        return cls(n, rows)

    # -- queries ---------------------------------------------------------

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def out_degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def in_rows(self) -> tuple[int, ...]:
        acc = [0] * self.n
        for u, row in enumerate(self.rows):
            for v in _bits(row):
                acc[v] |= 1 << u
        return tuple(acc)

    def in_degree(self, u: int) -> int:
        bit = 1 << u
        return sum(1 for row in self.rows if row & bit)

    def arc_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u])]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u in range(self.n):
            for v in _bits(self.rows[u]):
                a[u, v] = 1.0
        return a

    # -- derived digraphs -------------------------------------------------

    def reverse(self) -> "Digraph":
        return Digraph(self.n, self.in_rows())

    def permute(self, pi: Sequence[int]) -> "Digraph":
        rows = [0] * self.n
        for u, row in enumerate(self.rows):
            acc = 0
            for v in _bits(row):
                acc |= 1 << pi[v]
            rows[pi[u]] = acc
        return Digraph(self.n, rows)

    def subgraph(self, vertices: Iterable[int]) -> "Digraph":
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        rows = [0] * len(keep)
        for v in keep:
            acc = 0
            for w in _bits(self.rows[v]):
                if w in pos:
                    acc |= 1 << pos[w]
            rows[pos[v]] = acc
        return Digraph(len(keep), rows)

    def delete_vertices(self, vertices: Iterable[int]) -> "Digraph":
        drop = set(vertices)
        return self.subgraph(v for v in range(self.n) if v not in drop)

    def with_arcs(self, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        rows = list(self.rows)
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop ({u}, {v})")
            rows[u] |= 1 << v
        return Digraph(self.n, rows)

    def without_arcs(self, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        rows = list(self.rows)
        for u, v in arcs:
            rows[u] &= ~(1 << v)
        return Digraph(self.n, rows)

    # -- plumbing --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Digraph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(("digraph", self.n, self.rows))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arc_count()})"

    def __reduce__(self):
        return (Digraph, (self.n, self.rows))


# -- constructors ---------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def complete_graph(n: int) -> Graph:
    """All n(n-1)/2 edges present."""
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << u) for u in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Side-by-side union; the second block is shifted by ``g1.n``."""
    shift = g1.n
    rows = list(g1.rows) + [row << shift for row in g2.rows]
    return Graph(g1.n + g2.n, rows)


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two blocks (g1 labels first)."""
    n1, n2 = g1.n, g2.n
    mask1 = (1 << n1) - 1
    mask2 = ((1 << n2) - 1) << n1
    rows = [row | mask2 for row in g1.rows]
    rows += [(row << n1) | mask1 for row in g2.rows]
    return Graph(n1 + n2, rows)


def complete_digraph(n: int) -> Digraph:
    """Both arcs between every pair of distinct vertices."""
    full = (1 << n) - 1
    return Digraph(n, [full ^ (1 << u) for u in range(n)])


def digraph_union(d1: Digraph, d2: Digraph) -> Digraph:
    shift = d1.n
    rows = list(d1.rows) + [row << shift for row in d2.rows]
    return Digraph(d1.n + d2.n, rows)


def digraph_join(d1: Digraph, d2: Digraph) -> Digraph:
    """Union plus both arcs ``uv`` and ``vu`` for every cross pair (d1 labels first)."""
    n1, n2 = d1.n, d2.n
    mask1 = (1 << n1) - 1
    mask2 = ((1 << n2) - 1) << n1
    rows = [row | mask2 for row in d1.rows]
    rows += [(row << n1) | mask1 for row in d2.rows]
    return Digraph(n1 + n2, rows)


def one_way_join(d: Digraph, sources: Iterable[int], sinks: Iterable[int]) -> Digraph:
    """Add the arc ``s -> t`` for every source/sink pair."""
    return d.with_arcs((s, t) for s in sources for t in sinks)


# -- canonical labeling ----------------------------------------------------
#
# Iterated neighbor-count refinement plus backtracking over cell orderings.
# The canonical form is the lexicographically smallest upper-triangle bit
# encoding reachable through the (isomorphism-invariant) refinement tree,
# so equal byte strings hold exactly for isomorphic graphs.

_CANON_CAP = 128


def _refine(rows: Sequence[int], cells: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Split cells by neighbor counts into every cell, until stable.

    Subcells are ordered by ascending count, which keeps the result a
    function of the partition alone (not of vertex labels).
    """
    while True:
        changed = False
        for splitter in cells:
            smask = 0
            for v in splitter:
                smask |= 1 << v
            out: list[tuple[int, ...]] = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                buckets: dict[int, list[int]] = {}
                for v in cell:
                    buckets.setdefault((rows[v] & smask).bit_count(), []).append(v)
                if len(buckets) == 1:
                    out.append(cell)
                else:
                    changed = True
                    for count in sorted(buckets):
                        out.append(tuple(buckets[count]))
            if changed:
                cells = out
                break
        if not changed:
            return cells


def _canon_rows(n: int, rows: Sequence[int]) -> tuple[list[int], tuple[int, ...]]:
    """Return (column encoding, ordering) of the canonical labeling.

    ``ordering[p]`` is the original vertex placed at canonical position
    ``p``; column ``p`` holds the adjacency bits of that vertex towards
    positions ``0..p-1`` (position 0 bit most significant).
    """
    if n == 0:
        return [], ()

    best_cols: list[int] | None = None
    best_order: tuple[int, ...] | None = None

    def recurse(cells: list[tuple[int, ...]]) -> None:
        nonlocal best_cols, best_order
        cells = _refine(rows, cells)
        order: list[int] = []
        for cell in cells:
            if len(cell) != 1:
                break
            order.append(cell[0])
        cols: list[int] = []
        for pos, v in enumerate(order):
            col = 0
            for u in order[:pos]:
                col = (col << 1) | (rows[u] >> v & 1)
            cols.append(col)
        if best_cols is not None:
            prefix = best_cols[: len(cols)]
            if cols > prefix:
                return
        if len(order) == n:
            if best_cols is None or cols < best_cols:
                best_cols = cols
                best_order = tuple(order)
            return
        # first non-singleton cell is the branch target
        idx = next(i for i, cell in enumerate(cells) if len(cell) > 1)
        target = cells[idx]
        # interchangeable (twin) candidates explore identical subtrees; keep one
        reps: list[int] = []
        for v in target:
            bv = 1 << v
            for u in reps:
                bu = 1 << u
                if (rows[u] | bu | bv) == (rows[v] | bu | bv):
                    break
            else:
                reps.append(v)
        head = cells[:idx]
        tail = cells[idx + 1 :]
        for v in reps:
            rest = tuple(w for w in target if w != v)
            recurse(head + [(v,), rest] + tail)

    recurse([tuple(range(n))])
    assert best_cols is not None and best_order is not None
    return best_cols, best_order


def _pack_cols(n: int, cols: list[int]) -> bytes:
    bits: list[int] = []
    for pos, col in enumerate(cols):
        for shift in range(pos - 1, -1, -1):
            bits.append(col >> shift & 1)
    out = bytearray([n])
    for i in range(0, len(bits), 8):
        byte = 0
        for b in bits[i : i + 8]:
            byte = (byte << 1) | b
        byte <<= max(0, 8 - len(bits[i : i + 8]))
        out.append(byte)
    return bytes(out)


def canonical_form(g: Graph) -> bytes:
    """Canonical byte string: equal exactly for isomorphic graphs."""
    if g.n > _CANON_CAP:
        raise PreconditionError(f"canonical form supported for n <= {_CANON_CAP}")
    cols, _ = _canon_rows(g.n, g.rows)
    return _pack_cols(g.n, cols)


def canonical_permutation(g: Graph) -> tuple[int, ...]:
    """A relabeling ``pi`` (old -> new) realizing the canonical form."""
    _, order = _canon_rows(g.n, g.rows)
    pi = [0] * g.n
    for pos, v in enumerate(order):
        pi[v] = pos
    return tuple(pi)


@dataclass(frozen=True)
class Isomorphism:
    """Vertex bijection witnessing that two graphs coincide after relabeling."""

    mapping: tuple[int, ...]

    def maps(self, source: Graph, target: Graph) -> bool:
        if sorted(self.mapping) != list(range(source.n)) or source.n != target.n:
            return False
        return source.permute(self.mapping) == target


def is_isomorphic(g1: Graph, g2: Graph) -> Isomorphism | None:
    """Return a witnessing vertex bijection, or None."""
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    cols1, order1 = _canon_rows(g1.n, g1.rows)
    cols2, order2 = _canon_rows(g2.n, g2.rows)
    if cols1 != cols2:
        return None
    # send g1's vertex at canonical position p to g2's vertex there
    mapping = [0] * g1.n
    for pos in range(g1.n):
        mapping[order1[pos]] = order2[pos]
    iso = Isomorphism(tuple(mapping))
    assert iso.maps(g1, g2), "canonical labeling mismatch"
    return iso


# -- digraph canonical form (brute force, small n) -------------------------

_DIGRAPH_CANON_CAP = 8


def _pack_digraph(n: int, rows: Sequence[int]) -> int:
    acc = 0
    for u in range(n):
        row = rows[u]
        for v in range(n):
            acc = (acc << 1) | (row >> v & 1)
    return acc


def canonical_form_digraph(d: Digraph) -> bytes:
    """Minimum row-major arc encoding over all vertex orderings.

    Brute force over permutations; meant for the small maximizer sets the
    verifier reports, not for bulk streams.
    """
    n = d.n
    if n > _DIGRAPH_CANON_CAP:
        raise PreconditionError(f"digraph canonical form supported for n <= {_DIGRAPH_CANON_CAP}")
    best: int | None = None
    for perm in itertools.permutations(range(n)):
        rows = [0] * n
        for u, row in enumerate(d.rows):
            acc = 0
            for v in _bits(row):
                acc |= 1 << perm[v]
            rows[perm[u]] = acc
        packed = _pack_digraph(n, rows)
        if best is None or packed < best:
            best = packed
    if best is None:
        best = 0
    nbytes = (n * n + 7) // 8
    return bytes([n]) + best.to_bytes(nbytes, "big")


def canonical_digraph(d: Digraph) -> Digraph:
    """Canonically relabeled copy (same brute-force ordering as the form)."""
    n = d.n
    if n > _DIGRAPH_CANON_CAP:
        raise PreconditionError(f"digraph canonical form supported for n <= {_DIGRAPH_CANON_CAP}")
    best: int | None = None
    best_rows: list[int] = list(d.rows)
    for perm in itertools.permutations(range(n)):
        rows = [0] * n
        for u, row in enumerate(d.rows):
            acc = 0
            for v in _bits(row):
                acc |= 1 << perm[v]
            rows[perm[u]] = acc
        packed = _pack_digraph(n, rows)
        if best is None or packed < best:
            best = packed
            best_rows = rows
    return Digraph(n, best_rows)


def is_isomorphic_digraph(d1: Digraph, d2: Digraph) -> bool:
    if d1.n != d2.n or d1.arc_count() != d2.arc_count():
        return False
    return canonical_form_digraph(d1) == canonical_form_digraph(d2)
