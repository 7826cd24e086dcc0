"""Deterministic eigencomputation.

The dominant adjacency eigenpair comes from power iteration started at the
all-ones vector.  Iteration runs on A + I: adding the identity shifts every
eigenvalue by one, which breaks the bipartite +/-rho tie and makes any
irreducible nonnegative matrix primitive, so convergence is guaranteed for
connected graphs and strongly connected digraphs.  Residuals are always
measured against the original matrix.

Full symmetric spectra (Laplacian, adjacency cross-checks) use LAPACK via
numpy; the power-iteration path stays independent of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .connectivity import is_connected, is_strongly_connected
from .errors import (
    ConvergenceError,
    DisconnectedGraphError,
    NotStronglyConnectedError,
    PreconditionError,
)
from .graphs import Digraph, Graph

__all__ = [
    "SpectralResult",
    "LaplacianSpectrum",
    "spectral_radius",
    "spectral_radius_digraph",
    "algebraic_connectivity",
    "laplacian_spectrum",
    "adjacency_eigenvalues",
    "real_poly_largest_root",
]

DEFAULT_TOL = 1e-10
ITERATION_CAP = 10**6


@dataclass(frozen=True)
class SpectralResult:
    """Dominant eigenpair with its achieved residual."""

    radius: float
    perron: tuple[float, ...]
    residual: float
    iterations: int


@dataclass(frozen=True)
class LaplacianSpectrum:
    eigenvalues: tuple[float, ...]


def _power_iterate(a: np.ndarray, tol: float) -> tuple[float, np.ndarray, float, int]:
    n = a.shape[0]
    x = np.full(n, 1.0 / np.sqrt(n))
    for it in range(1, ITERATION_CAP + 1):
        y = a @ x
        rho = float(x @ y)
        residual = float(np.max(np.abs(y - rho * x)))
        if residual <= tol:
            return rho, x, residual, it
        z = y + x  # (A + I) x
        x = z / np.linalg.norm(z)
    raise ConvergenceError(f"power iteration did not reach residual {tol} in {ITERATION_CAP} steps")


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL) -> SpectralResult:
    """Largest adjacency eigenvalue and Perron vector of a connected graph."""
    if g.n < 1:
        raise PreconditionError("spectral radius needs at least one vertex")
    if not is_connected(g):
        raise DisconnectedGraphError("spectral radius requires a connected graph")
    rho, x, residual, it = _power_iterate(g.adjacency_matrix(), tol)
    return SpectralResult(rho, tuple(float(v) for v in x), residual, it)


def spectral_radius_digraph(d: Digraph, tol: float = DEFAULT_TOL) -> SpectralResult:
    """Perron root of a strongly connected digraph.

    Right and left eigenpairs are both iterated and both residuals must
    meet the tolerance; the reported residual is the worse of the two.
    """
    if d.n < 1:
        raise PreconditionError("spectral radius needs at least one vertex")
    if not is_strongly_connected(d):
        raise NotStronglyConnectedError("adjacency matrix must be irreducible")
    a = d.adjacency_matrix()
    rho_r, x, res_r, it_r = _power_iterate(a, tol)
    rho_l, _, res_l, it_l = _power_iterate(a.T, tol)
    if abs(rho_r - rho_l) > 100 * max(tol, 1e-15):
        raise ConvergenceError(
            f"left/right Perron estimates disagree: {rho_r} vs {rho_l}"
        )
    return SpectralResult(
        rho_r, tuple(float(v) for v in x), max(res_r, res_l), it_r + it_l
    )


def component_radius(g: Graph, tol: float = DEFAULT_TOL) -> float:
    """Largest adjacency eigenvalue of a possibly disconnected graph."""
    from .connectivity import components

    best = 0.0
    for piece in components(g):
        if len(piece) == 1:
            continue
        best = max(best, spectral_radius(g.subgraph(piece), tol).radius)
    return best


def _laplacian(g: Graph) -> np.ndarray:
    a = g.adjacency_matrix()
    return np.diag(a.sum(axis=1)) - a


def laplacian_spectrum(g: Graph) -> LaplacianSpectrum:
    """Ascending Laplacian eigenvalues."""
    if g.n == 0:
        return LaplacianSpectrum(())
    vals = np.linalg.eigvalsh(_laplacian(g))
    return LaplacianSpectrum(tuple(float(v) for v in vals))


def algebraic_connectivity(g: Graph) -> float:
    """Second-smallest Laplacian eigenvalue."""
    if g.n < 2:
        raise PreconditionError("algebraic connectivity needs at least two vertices")
    return laplacian_spectrum(g).eigenvalues[1]


def adjacency_eigenvalues(g: Graph) -> tuple[float, ...]:
    """Full adjacency spectrum (ascending), by symmetric eigensolve."""
    if g.n == 0:
        return ()
    vals = np.linalg.eigvalsh(g.adjacency_matrix())
    return tuple(float(v) for v in vals)


def real_poly_largest_root(
    coeffs: Sequence[float], lo: float, hi: float, tol: float = 1e-12
) -> float:
    """Bisect the sign change of the polynomial on [lo, hi].

    ``coeffs`` are given highest degree first.  The bracket must satisfy
    sign(p(lo)) != sign(p(hi)); intended for brackets that isolate the
    largest real root.
    """

    def val(x: float) -> float:
        acc = 0.0
        for c in coeffs:
            acc = acc * x + c
        return acc

    flo, fhi = val(lo), val(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise PreconditionError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:  # float exhaustion
            break
        fmid = val(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0) == (fhi > 0):
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    return (lo + hi) / 2
