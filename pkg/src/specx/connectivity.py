"""Connectivity with certificates: components, vertex/edge cuts, essential
cuts, strongly connected components and their condensation order.

Essential connectivity is found by increasing-size subset enumeration
(exact at desk scale); vertex and edge connectivity go through unit-capacity
max-flow so the two kinds of answer cross-check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DisconnectedGraphError, NotStronglyConnectedError, PreconditionError
from .graphs import Digraph, Graph, _bits

__all__ = [
    "CutCertificate",
    "SccOrdering",
    "components",
    "is_connected",
    "vertex_connectivity",
    "edge_connectivity",
    "essential_connectivity",
    "strongly_connected_components",
    "is_strongly_connected",
    "condensation_ordering",
    "essential_connectivity_digraph",
]


@dataclass(frozen=True)
class CutCertificate:
    """Replayable witness: deleting ``cut`` leaves exactly ``pieces``."""

    cut: tuple[int, ...]
    pieces: tuple[tuple[int, ...], ...]
    nontrivial: tuple[bool, ...]

    def to_text(self) -> str:
        s = ",".join(str(v) for v in self.cut)
        ps = "|".join("(" + ",".join(str(v) for v in piece) + ")" for piece in self.pieces)
        return f"S=({s}); pieces={ps}"


@dataclass(frozen=True)
class SccOrdering:
    """Strongly connected pieces in a topological order of the condensation.

    Arcs between distinct pieces always go from an earlier piece to a
    later one, so the first piece is a source of the condensation.
    """

    sccs: tuple[tuple[int, ...], ...]


# -- undirected ------------------------------------------------------------


def _component_masks(rows: Sequence[int], vmask: int) -> list[int]:
    comps = []
    rem = vmask
    while rem:
        start = rem & -rem
        comp = start
        frontier = start
        while frontier:
            grow = 0
            for u in _bits(frontier):
                grow |= rows[u]
            grow &= vmask & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        rem &= ~comp
    return comps


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    return tuple(_bits(mask))


def components(g: Graph) -> list[tuple[int, ...]]:
    """Connected pieces, ordered by least contained label."""
    full = (1 << g.n) - 1
    return [_mask_to_tuple(m) for m in _component_masks(g.rows, full)]


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    full = (1 << g.n) - 1
    return len(_component_masks(g.rows, full)) == 1


def _require_connected(g: Graph) -> None:
    if g.n == 0 or not is_connected(g):
        raise DisconnectedGraphError("operation requires a connected graph")


def _maxflow(cap: list[list[int]], source: int, sink: int, limit: int) -> int:
    """Unit-ish capacity max flow by BFS augmentation, stopping at ``limit``."""
    size = len(cap)
    flow = 0
    while flow < limit:
        parent = [-1] * size
        parent[source] = source
        queue = [source]
        for node in queue:
            if node == sink:
                break
            row = cap[node]
            for nxt in range(size):
                if row[nxt] > 0 and parent[nxt] < 0:
                    parent[nxt] = node
                    queue.append(nxt)
        if parent[sink] < 0:
            break
        # bottleneck is 1 on every augmenting path (vertex splits / unit edges)
        node = sink
        while node != source:
            prev = parent[node]
            cap[prev][node] -= 1
            cap[node][prev] += 1
            node = prev
        flow += 1
    return flow


def _vertex_cut_network(g: Graph) -> list[list[int]]:
    # node 2v = "in" copy, 2v+1 = "out" copy; split arc capacity 1
    n = g.n
    inf = n + 1
    size = 2 * n
    cap = [[0] * size for _ in range(size)]
    for v in range(n):
        cap[2 * v][2 * v + 1] = 1
        for w in _bits(g.rows[v]):
            cap[2 * v + 1][2 * w] = inf
    return cap


def vertex_connectivity(g: Graph) -> tuple[int, CutCertificate | None]:
    """Minimum vertex cut via max-flow over all non-adjacent pairs.

    Complete graphs have no cut; they report ``(n - 1, None)``.
    """
    _require_connected(g)
    n = g.n
    if n == 1:
        return 0, None
    if g.edge_count() == n * (n - 1) // 2:
        return n - 1, None
    base = _vertex_cut_network(g)
    best = n
    best_cut: tuple[int, ...] | None = None
    for s in range(n):
        for t in range(s + 1, n):
            if g.has_edge(s, t):
                continue
            cap = [row[:] for row in base]
            flow = _maxflow(cap, 2 * s + 1, 2 * t, limit=best)
            if flow < best:
                best = flow
                # min cut: vertices whose split arc crosses the residual frontier
                reach = [False] * len(cap)
                reach[2 * s + 1] = True
                queue = [2 * s + 1]
                for node in queue:
                    for nxt in range(len(cap)):
                        if cap[node][nxt] > 0 and not reach[nxt]:
                            reach[nxt] = True
                            queue.append(nxt)
                best_cut = tuple(v for v in range(n) if reach[2 * v] and not reach[2 * v + 1])
    assert best_cut is not None and len(best_cut) == best
    vmask = ((1 << n) - 1) & ~sum(1 << v for v in best_cut)
    pieces = tuple(_mask_to_tuple(m) for m in _component_masks(g.rows, vmask))
    flags = tuple(len(p) >= 2 for p in pieces)
    return best, CutCertificate(best_cut, pieces, flags)


def edge_connectivity(g: Graph) -> int:
    """Minimum edge cut size: n-1 max-flow runs from a fixed root."""
    _require_connected(g)
    n = g.n
    if n == 1:
        return 0
    base = [[0] * n for _ in range(n)]
    for v in range(n):
        for w in _bits(g.rows[v]):
            base[v][w] = 1
    best = n
    for t in range(1, n):
        cap = [row[:] for row in base]
        best = min(best, _maxflow(cap, 0, t, limit=best))
    return best


def essential_connectivity(g: Graph) -> tuple[int, CutCertificate] | None:
    """Smallest vertex set whose removal leaves >= 2 pieces of size >= 2.

    Returns None when no such cut exists (for instance complete graphs).
    Search is exhaustive in increasing cut size, so the certificate also
    witnesses minimality.
    """
    _require_connected(g)
    n = g.n
    full = (1 << n) - 1
    for size in range(1, max(n - 3, 0)):
        for cut in combinations(range(n), size):
            smask = 0
            for v in cut:
                smask |= 1 << v
            comp_masks = _component_masks(g.rows, full & ~smask)
            if len(comp_masks) < 2:
                continue
            flags = tuple(m.bit_count() >= 2 for m in comp_masks)
            if sum(flags) >= 2:
                pieces = tuple(_mask_to_tuple(m) for m in comp_masks)
                return size, CutCertificate(cut, pieces, flags)
    return None


# -- directed --------------------------------------------------------------


def _scc_masks(rows: Sequence[int], vmask: int) -> list[int]:
    """Tarjan over the vertices in ``vmask``; emission order is reverse
    topological (sinks of the condensation first)."""
    index: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[int] = []
    counter = 0

    for root in _bits(vmask):
        if root in index:
            continue
        work = [(root, iter(_bits(rows[root] & vmask)))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(_bits(rows[w] & vmask))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                comp = 0
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp |= 1 << w
                    if w == v:
                        break
                out.append(comp)
    return out


def strongly_connected_components(d: Digraph) -> list[tuple[int, ...]]:
    """SCC partition in reverse topological emission order."""
    full = (1 << d.n) - 1
    return [_mask_to_tuple(m) for m in _scc_masks(d.rows, full)]


def is_strongly_connected(d: Digraph) -> bool:
    if d.n == 0:
        return True
    full = (1 << d.n) - 1
    return len(_scc_masks(d.rows, full)) == 1


def condensation_ordering(d: Digraph, cut: Iterable[int]) -> SccOrdering:
    """SCCs of ``d`` minus ``cut``, source piece first.

    Every arc between distinct pieces runs from an earlier piece to a
    later one.
    """
    smask = 0
    for v in cut:
        smask |= 1 << v
    full = (1 << d.n) - 1
    vmask = full & ~smask
    if vmask == 0:
        raise PreconditionError("cut set removes every vertex")
    masks = _scc_masks(d.rows, vmask)
    return SccOrdering(tuple(_mask_to_tuple(m) for m in reversed(masks)))


def essential_connectivity_digraph(d: Digraph) -> tuple[int, CutCertificate] | None:
    """Smallest vertex set whose removal leaves >= 2 strongly connected
    pieces of size >= 2; None when no such cut exists."""
    if not is_strongly_connected(d) or d.n == 0:
        raise NotStronglyConnectedError("essential connectivity needs a strongly connected digraph")
    n = d.n
    full = (1 << n) - 1
    for size in range(1, max(n - 3, 0)):
        for cut in combinations(range(n), size):
            smask = 0
            for v in cut:
                smask |= 1 << v
            masks = _scc_masks(d.rows, full & ~smask)
            flags = tuple(m.bit_count() >= 2 for m in masks)
            if sum(flags) >= 2:
                pieces = tuple(_mask_to_tuple(m) for m in masks)
                return size, CutCertificate(cut, pieces, flags)
    return None
