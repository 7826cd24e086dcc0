"""Equitable partitions and quotient matrices.

A partition is equitable when every vertex of a cell has the same number
of (out-)neighbors in each cell; the quotient then shares its largest
eigenvalue with the full adjacency matrix, which turns small exact
matrices into certificates for spectral radii.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import PartitionError
from .graphs import Digraph, Graph
from .spectral import DEFAULT_TOL, spectral_radius, spectral_radius_digraph

__all__ = [
    "EquitablePartition",
    "InclusionReport",
    "is_equitable",
    "quotient_matrix",
    "verify_eigen_inclusion",
    "coarsest_equitable_refinement",
    "char_poly_int",
    "largest_root_int_poly",
]

Cells = Sequence[Sequence[int]]


@dataclass(frozen=True)
class EquitablePartition:
    cells: tuple[tuple[int, ...], ...]
    quotient: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class InclusionReport:
    quotient_value: float
    full_value: float
    difference: float
    within: bool


def _check_partition(n: int, cells: Cells) -> list[int]:
    masks = []
    seen = 0
    for cell in cells:
        if not cell:
            raise PartitionError("empty cell")
        mask = 0
        for v in cell:
            if not 0 <= v < n:
                raise PartitionError(f"vertex {v} out of range")
            bit = 1 << v
            if seen & bit or mask & bit:
                raise PartitionError(f"vertex {v} appears twice")
            mask |= bit
        seen |= mask
        masks.append(mask)
    if seen != (1 << n) - 1:
        raise PartitionError("cells do not cover every vertex")
    return masks


def is_equitable(
    g: Graph | Digraph, cells: Cells
) -> tuple[bool, tuple[int, int] | None]:
    """Check constant (out-)neighbor counts; returns the first violating
    (vertex, cell index) witness otherwise."""
    masks = _check_partition(g.n, cells)
    for cell in cells:
        ref = None
        for v in cell:
            counts = tuple((g.rows[v] & m).bit_count() for m in masks)
            if ref is None:
                ref = counts
            elif counts != ref:
                bad = next(j for j in range(len(masks)) if counts[j] != ref[j])
                return False, (v, bad)
    return True, None


def quotient_matrix(g: Graph | Digraph, cells: Cells) -> np.ndarray:
    """Exact integer quotient matrix of an equitable partition."""
    ok, witness = is_equitable(g, cells)
    if not ok:
        raise PartitionError(f"partition is not equitable: vertex {witness[0]} vs cell {witness[1]}")
    masks = _check_partition(g.n, cells)
    k = len(cells)
    b = np.zeros((k, k), dtype=np.int64)
    for i, cell in enumerate(cells):
        v = cell[0]
        for j, m in enumerate(masks):
            b[i, j] = (g.rows[v] & m).bit_count()
    return b


def coarsest_equitable_refinement(g: Graph | Digraph, cells: Cells) -> EquitablePartition:
    """Split cells by (out-)neighbor counts until stable.

    The result is equitable and refines the seed partition; splitting is
    deterministic (subcells ordered by ascending count vector).
    """
    _check_partition(g.n, cells)
    work = [tuple(sorted(c)) for c in cells]
    while True:
        masks = []
        for cell in work:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        new: list[tuple[int, ...]] = []
        changed = False
        for cell in work:
            if len(cell) == 1:
                new.append(cell)
                continue
            buckets: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                key = tuple((g.rows[v] & m).bit_count() for m in masks)
                buckets.setdefault(key, []).append(v)
            if len(buckets) == 1:
                new.append(cell)
            else:
                changed = True
                for key in sorted(buckets):
                    new.append(tuple(buckets[key]))
        if not changed:
            quot = quotient_matrix(g, work)
            return EquitablePartition(
                tuple(work), tuple(tuple(int(x) for x in row) for row in quot)
            )
        work = new


def char_poly_int(matrix: np.ndarray | Sequence[Sequence[int]]) -> list[int]:
    """Exact integer coefficients of det(xI - M), highest degree first.

    Cofactor expansion over integer polynomials; fine for the k <= 6
    quotients this package certifies with.
    """
    m = [[int(x) for x in row] for row in np.asarray(matrix)]
    k = len(m)
    if any(len(row) != k for row in m):
        raise PartitionError("characteristic polynomial needs a square matrix")

    # polynomials as ascending coefficient lists
    def padd(p, q):
        out = [0] * max(len(p), len(q))
        for i, c in enumerate(p):
            out[i] += c
        for i, c in enumerate(q):
            out[i] += c
        return out

    def pmul(p, q):
        out = [0] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            if a:
                for j, b in enumerate(q):
                    out[i + j] += a * b
        return out

    def pneg(p):
        return [-c for c in p]

    entries = [
        [([-m[i][j], 1] if i == j else [-m[i][j]]) for j in range(k)] for i in range(k)
    ]

    def det(rows: list[int], cols: list[int]):
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        acc = [0]
        r = rows[0]
        rest = rows[1:]
        for idx, c in enumerate(cols):
            sub = det(rest, cols[:idx] + cols[idx + 1 :])
            term = pmul(entries[r][c], sub)
            acc = padd(acc, term if idx % 2 == 0 else pneg(term))
        return acc

    if k == 0:
        return [1]
    poly = det(list(range(k)), list(range(k)))
    return [int(c) for c in reversed(poly)]


def _eval_int_poly(coeffs: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def largest_root_int_poly(coeffs: Sequence[int], hi: float, tol: float = 1e-13) -> float:
    """Largest real root of a monic integer polynomial, to within ``tol``.

    A floating eigenvalue-style estimate would be good to ~1e-12 already;
    here the float companion-matrix roots only seed the bracket, and the
    root is then pinned by bisection with exact rational evaluation, so
    the answer carries no floating-point doubt.  ``hi`` must lie above
    every real root (for a nonnegative matrix, max row sum + 1 works).
    """
    if coeffs[0] != 1:
        raise PartitionError("expected a monic integer polynomial")
    top = Fraction(hi)
    while _eval_int_poly(coeffs, top) <= 0:
        top += 1
    roots = np.roots([float(c) for c in coeffs])
    real_candidates = sorted(
        (float(r.real) for r in roots if abs(r.imag) < 1e-6), reverse=True
    )
    step = Fraction(1, 1 << 20)
    for est in real_candidates:
        # bracket around the float estimate, verified by exact signs
        lo_f = Fraction(est) - step
        hi_f = min(Fraction(est) + step, top)
        tries = 0
        while _eval_int_poly(coeffs, hi_f) <= 0 and hi_f < top:
            hi_f = min(hi_f + step, top)
            tries += 1
            if tries > 64:
                break
        if _eval_int_poly(coeffs, hi_f) <= 0:
            continue
        tries = 0
        while _eval_int_poly(coeffs, lo_f) >= 0 and tries <= 64:
            val = _eval_int_poly(coeffs, lo_f)
            if val == 0:
                return float(lo_f)
            lo_f -= step
            tries += 1
        if _eval_int_poly(coeffs, lo_f) >= 0:
            continue
        target = Fraction(tol)
        while hi_f - lo_f > target:
            mid = (lo_f + hi_f) / 2
            val = _eval_int_poly(coeffs, mid)
            if val == 0:
                return float(mid)
            if val > 0:
                hi_f = mid
            else:
                lo_f = mid
        return float((lo_f + hi_f) / 2)
    raise PartitionError("could not isolate a real root; check the matrix")


def verify_eigen_inclusion(
    g: Graph | Digraph, cells: Cells, tol: float = 1e-9
) -> InclusionReport:
    """Largest quotient eigenvalue against the full spectral radius.

    The two sides are computed by unrelated paths (exact characteristic
    polynomial plus bisection vs. power iteration), so agreement certifies
    both.
    """
    b = quotient_matrix(g, cells)
    hi = float(max(b.sum(axis=1).max(), 1)) + 1.0
    quotient_value = largest_root_int_poly(char_poly_int(b), hi)
    if isinstance(g, Digraph):
        full_value = spectral_radius_digraph(g, DEFAULT_TOL).radius
    else:
        full_value = spectral_radius(g, DEFAULT_TOL).radius
    diff = abs(quotient_value - full_value)
    return InclusionReport(quotient_value, full_value, diff, diff <= tol)
