"""Extremal-family constructors and their certified spectral radii.

Two undirected families (selected by how the essential connectivity
compares with the minimum degree) and one digraph family are built here,
together with the closed-form radius of the digraph family and the exact
quotient-polynomial route that every radius is cross-checked against.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, localcontext

from .errors import FamilyParameterError, PreconditionError
from .graphs import (
    Digraph,
    Graph,
    complete_digraph,
    complete_graph,
    digraph_join,
    digraph_union,
    disjoint_union,
    join,
    one_way_join,
)
from .quotient import char_poly_int, largest_root_int_poly, quotient_matrix
from .spectral import spectral_radius

__all__ = [
    "UndirectedFamilyParams",
    "DigraphFamilyParams",
    "build_undirected_extremal",
    "build_join_family",
    "build_digraph_extremal",
    "digraph_extremal_radius",
    "radius_discriminant",
    "radius_discriminant_max",
    "digraph_quotient_char_poly",
    "undirected_extremal_radius",
    "undirected_family_cells",
    "digraph_family_cells",
    "parse_family_spec",
]


@dataclass(frozen=True)
class UndirectedFamilyParams:
    """Order ``n``, essential connectivity ``kappa_e``, minimum degree ``delta``."""

    n: int
    kappa_e: int
    delta: int

    def validate(self) -> None:
        if self.kappa_e < 1:
            raise FamilyParameterError(f"need kappa_e >= 1, got {self.kappa_e}")
        if self.delta < 1:
            raise FamilyParameterError(f"need delta >= 1, got {self.delta}")
        if self.n < self.kappa_e + 4:
            raise FamilyParameterError(
                f"need n >= kappa_e + 4, got n={self.n}, kappa_e={self.kappa_e}"
            )
        if self.kappa_e <= self.delta - 1 and self.n < 2 * self.delta - self.kappa_e + 2:
            # the two clique parts must have sizes n-delta-1 >= delta-kappa_e+1
            raise FamilyParameterError(
                f"need n >= 2*delta - kappa_e + 2 when kappa_e <= delta - 1, "
                f"got n={self.n}, delta={self.delta}, kappa_e={self.kappa_e}"
            )


@dataclass(frozen=True)
class DigraphFamilyParams:
    """Order ``n``, essential connectivity ``k``, leading clique size ``m``."""

    n: int
    k: int
    m: int

    def validate(self) -> None:
        if self.k < 1:
            raise FamilyParameterError(f"need k >= 1, got {self.k}")
        if self.n < self.k + 4:
            raise FamilyParameterError(f"need n >= k + 4, got n={self.n}, k={self.k}")
        if not 2 <= self.m <= self.n - self.k - 2:
            raise FamilyParameterError(
                f"need 2 <= m <= n - k - 2, got m={self.m}, n={self.n}, k={self.k}"
            )


def build_join_family(s: int, parts: tuple[int, ...] | list[int]) -> Graph:
    """A clique on ``s`` vertices joined to disjoint cliques of the given
    sizes; join vertices take labels 0..s-1, parts follow in order."""
    if s < 0:
        raise FamilyParameterError(f"need s >= 0, got {s}")
    if not parts or any(p < 1 for p in parts):
        raise FamilyParameterError(f"parts must be nonempty positive sizes, got {parts!r}")
    body = complete_graph(parts[0])
    for p in parts[1:]:
        body = disjoint_union(body, complete_graph(p))
    return join(complete_graph(s), body)


def build_undirected_extremal(params: UndirectedFamilyParams) -> Graph:
    """The maximum-radius graph with the given order, minimum degree and
    essential connectivity.

    When ``kappa_e <= delta - 1``: a clique of size kappa_e joined to two
    cliques of sizes n-delta-1 and delta-kappa_e+1 (labels: join set, big
    part, small part).

    Otherwise: vertex ``u`` (label 0) attached to the first delta-1
    vertices of a cut clique S (labels 1..kappa_e) and to a vertex ``z``
    (label kappa_e+1); S is joined to z and to the remaining clique on
    n-kappa_e-2 vertices (last labels).
    """
    params.validate()
    n, ke, delta = params.n, params.kappa_e, params.delta
    if ke <= delta - 1:
        return build_join_family(ke, (n - delta - 1, delta - ke + 1))
    # kappa_e > delta - 1 case
    core = join(complete_graph(ke), disjoint_union(complete_graph(1), complete_graph(n - ke - 2)))
    g = disjoint_union(complete_graph(1), core)  # u gets label 0, S is 1..ke, z is ke+1
    u, z = 0, ke + 1
    extra = [(u, w) for w in range(1, delta)] + [(u, z)]
    return g.with_edges(extra)


def build_digraph_extremal(params: DigraphFamilyParams) -> Digraph:
    """Cut clique of size k bidirectionally joined to cliques of sizes m
    and n-k-m, plus every one-way arc from the m-clique to the other.

    Labels: cut set 0..k-1, m-clique next, remaining clique last.
    """
    params.validate()
    n, k, m = params.n, params.k, params.m
    body = digraph_union(complete_digraph(m), complete_digraph(n - k - m))
    d = digraph_join(complete_digraph(k), body)
    first = range(k, k + m)
    second = range(k + m, n)
    return one_way_join(d, first, second)


def radius_discriminant(n: int, k: int, x: int) -> int:
    """The integer under the square root in the closed-form radius:
    4x^2 - 4(n-k)x + n^2, for 2 <= x <= n-k-2."""
    if not 2 <= x <= n - k - 2:
        raise PreconditionError(f"need 2 <= x <= n - k - 2, got x={x}, n={n}, k={k}")
    return 4 * x * x - 4 * (n - k) * x + n * n


def radius_discriminant_max(n: int, k: int) -> tuple[int, tuple[int, ...]]:
    """Maximum of the discriminant over the integer range and its argmax.

    The parabola opens upward, so the maximum sits at the endpoints
    x = 2 and x = n - k - 2, with common value (n-4)^2 + 8k.
    """
    if k < 1 or n < k + 4:
        raise PreconditionError(f"need k >= 1 and n >= k + 4, got n={n}, k={k}")
    lo, hi = 2, n - k - 2
    best = max(radius_discriminant(n, k, x) for x in range(lo, hi + 1))
    argmax = tuple(sorted({x for x in (lo, hi) if radius_discriminant(n, k, x) == best}))
    assert best == (n - 4) ** 2 + 8 * k
    return best, argmax


def digraph_extremal_radius(params: DigraphFamilyParams) -> float:
    """Closed-form spectral radius (n - 2 + sqrt(disc)) / 2.

    Evaluated in extended precision before rounding to float, so endpoint
    ties compare exactly at double precision.
    """
    params.validate()
    disc = radius_discriminant(params.n, params.k, params.m)
    if disc < 0:
        raise FamilyParameterError(f"negative discriminant {disc}; parameters out of range")
    with localcontext() as ctx:
        ctx.prec = 50
        value = (Decimal(params.n - 2) + Decimal(disc).sqrt()) / 2
    return float(value)


def digraph_family_cells(params: DigraphFamilyParams) -> tuple[tuple[int, ...], ...]:
    """The equitable partition of the digraph family: cut set, m-clique,
    remaining clique."""
    n, k, m = params.n, params.k, params.m
    return (
        tuple(range(k)),
        tuple(range(k, k + m)),
        tuple(range(k + m, n)),
    )


def digraph_quotient_char_poly(params: DigraphFamilyParams) -> list[int]:
    """Exact cubic det(xI - B) of the family's 3x3 quotient matrix,
    highest degree first.  x = -1 is always a root; the largest root is
    the family's spectral radius."""
    params.validate()
    d = build_digraph_extremal(params)
    b = quotient_matrix(d, digraph_family_cells(params))
    return char_poly_int(b)


def undirected_family_cells(params: UndirectedFamilyParams) -> tuple[tuple[int, ...], ...]:
    """Symmetry classes of the undirected family, matching the builder's
    labeling; empty classes are dropped."""
    n, ke, delta = params.n, params.kappa_e, params.delta
    if ke <= delta - 1:
        cells = [
            tuple(range(ke)),
            tuple(range(ke, n - delta - 1 + ke)),
            tuple(range(n - delta - 1 + ke, n)),
        ]
    else:
        u, z = 0, ke + 1
        cells = [
            (u,),
            tuple(range(1, delta)),  # neighbors of u inside the cut set
            tuple(range(delta, ke + 1)),
            (z,),
            tuple(range(ke + 2, n)),
        ]
    return tuple(c for c in cells if c)


def undirected_extremal_radius(params: UndirectedFamilyParams, cross_tol: float = 1e-9) -> float:
    """Spectral radius of the undirected family.

    Computed as the largest root of the exact quotient characteristic
    polynomial, then cross-checked against power iteration on the full
    graph; disagreement flags a numerics bug rather than being averaged
    away.
    """
    g = build_undirected_extremal(params)
    cells = undirected_family_cells(params)
    b = quotient_matrix(g, cells)
    hi = float(b.sum(axis=1).max()) + 1.0
    value = largest_root_int_poly(char_poly_int(b), hi)
    direct = spectral_radius(g).radius
    if abs(value - direct) > cross_tol:
        raise FamilyParameterError(
            f"quotient radius {value} and power iteration {direct} disagree beyond {cross_tol}"
        )
    return value


_FAMILY_RE = re.compile(
    r"^\s*(g|dg)\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$"
)


def parse_family_spec(spec: str) -> UndirectedFamilyParams | DigraphFamilyParams:
    """Parse ``g(n,kappa,delta)`` or ``dg(n,k,m)`` family descriptors."""
    m = _FAMILY_RE.match(spec)
    if not m:
        raise FamilyParameterError(
            f"bad family spec {spec!r}; expected g(n,kappa,delta) or dg(n,k,m)"
        )
    kind, a, b, c = m.group(1), int(m.group(2)), int(m.group(3)), int(m.group(4))
    if kind == "g":
        params: UndirectedFamilyParams | DigraphFamilyParams = UndirectedFamilyParams(a, b, c)
    else:
        params = DigraphFamilyParams(a, b, c)
    params.validate()
    return params
