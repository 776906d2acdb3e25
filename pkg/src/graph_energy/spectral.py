"""Adjacency spectra, graph energy and vertex energies.

The eigensolver is a cyclic Jacobi iteration written over stacks of
matrices, so a whole enumeration chunk of small graphs is diagonalized with
one sweep loop. A single graph is just a stack of one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError
from .graph import Graph, classify_components

OFF_DIAGONAL_TOL = 1e-12
MAX_SWEEPS = 100


def _max_off_diagonal(a: np.ndarray) -> np.ndarray:
    """Per-matrix max |off-diagonal| for a stack stored as (n, n, B)."""
    n = a.shape[0]
    if n < 2:
        return np.zeros(a.shape[2])
    iu = np.triu_indices(n, 1)
    return np.abs(a[iu]).max(axis=0)


def _sweep(a: np.ndarray, u: np.ndarray | None) -> None:
    """One cyclic Jacobi sweep, in place, over a stack laid out as (n, n, B)."""
    n = a.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
                tau = (a[q, q] - a[p, p]) / (2.0 * np.where(active, apq, 1.0))
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            t = np.where(active & np.isfinite(t), t, 0.0)
            c = 1.0 / np.hypot(1.0, t)
            s = t * c

            rp = a[p].copy()
            a[p] = c * rp - s * a[q]
            a[q] = s * rp + c * a[q]
            cp = a[:, p].copy()
            a[:, p] = c * cp - s * a[:, q]
            a[:, q] = s * cp + c * a[:, q]
            a[p, q] = 0.0
            a[q, p] = 0.0
            if u is not None:
                vp = u[:, p].copy()
                u[:, p] = c * vp - s * u[:, q]
                u[:, q] = s * vp + c * u[:, q]


def jacobi_eigh(matrices, vectors: bool = True, tol: float = OFF_DIAGONAL_TOL,
                max_sweeps: int = MAX_SWEEPS):
    """Eigendecomposition of a stack of real symmetric matrices.

    Parameters
    ----------
    matrices : array_like, shape (n, n) or (B, n, n)
    vectors : bool
        Accumulate the rotations into eigenvector matrices.

    Returns
    -------
    eigenvalues : ndarray, shape (..., n), ascending
    basis : ndarray, shape (..., n, n) or None
        Columns are eigenvectors: ``A = U @ diag(lam) @ U.T``.

    Raises
    ------
    ConvergenceError
        If some matrix still has an off-diagonal entry of magnitude ``tol``
        or more after ``max_sweeps`` sweeps.
    """
    m = np.asarray(matrices, dtype=np.float64)
    single = m.ndim == 2
    if single:
        m = m[None]
    b, n, _ = m.shape
    a = np.array(m.transpose(1, 2, 0), order="C")
    u = np.array(np.broadcast_to(np.eye(n)[:, :, None], (n, n, b)), order="C") if vectors else None

    # matrices are retired from the working set once converged
    work = np.arange(b)
    wa, wu = a, u
    sweeps = 0
    while True:
        residual = _max_off_diagonal(wa)
        done = residual < tol
        if done.any():
            a[:, :, work[done]] = wa[:, :, done]
            if vectors:
                u[:, :, work[done]] = wu[:, :, done]
            keep = ~done
            work, wa = work[keep], np.ascontiguousarray(wa[:, :, keep])
            if vectors:
                wu = np.ascontiguousarray(wu[:, :, keep])
            residual = residual[keep]
        if len(work) == 0:
            break
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(max off-diagonal {residual.max():.3e})",
                residual=float(residual.max()),
            )
        _sweep(wa, wu)
        sweeps += 1

    lam = np.diagonal(a, axis1=0, axis2=1).copy()  # (B, n)
    order = np.argsort(lam, axis=1, kind="stable")
    lam = np.take_along_axis(lam, order, axis=1)
    basis = None
    if vectors:
        basis = np.take_along_axis(u.transpose(2, 0, 1), order[:, None, :], axis=2)
    if single:
        return lam[0], (basis[0] if vectors else None)
    return lam, basis


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues and the orthonormal eigenvector matrix (columns)."""

    eigenvalues: np.ndarray
    basis: np.ndarray

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        return (self.basis * self.eigenvalues) @ self.basis.T

    def residuals(self, adjacency) -> tuple[float, float]:
        """(orthogonality, reconstruction) residuals in the max norm."""
        if self.n == 0:
            return 0.0, 0.0
        ortho = np.abs(self.basis.T @ self.basis - np.eye(self.n)).max()
        recon = np.abs(self.reconstruct() - np.asarray(adjacency)).max()
        return float(ortho), float(recon)


def eigendecompose(g: Graph) -> Spectrum:
    if g.n == 0:
        return Spectrum(np.zeros(0), np.zeros((0, 0)))
    lam, u = jacobi_eigh(g.adjacency)
    return Spectrum(lam, u)


def energy(s: Spectrum) -> float:
    return float(np.abs(s.eigenvalues).sum())


def vertex_energies(s: Spectrum) -> np.ndarray:
    """Diagonal of |A|, computed as sum_k u_ik^2 |lambda_k|."""
    return (s.basis ** 2) @ np.abs(s.eigenvalues)


def graph_energy(g: Graph) -> float:
    return energy(eigendecompose(g))


@dataclass(frozen=True)
class EdgeProducts:
    edges: tuple[tuple[int, int], ...]
    products: np.ndarray
    min_product: float
    argmin: tuple[int, int] | None


def edge_energy_products(g: Graph, s: Spectrum | None = None) -> EdgeProducts:
    """E(i) * E(j) for every edge, plus the smallest product and its edge."""
    s = eigendecompose(g) if s is None else s
    ve = vertex_energies(s)
    prods = np.array([ve[u] * ve[v] for u, v in g.edges])
    if g.m == 0:
        return EdgeProducts((), prods, float("inf"), None)
    k = int(np.argmin(prods))
    return EdgeProducts(g.edges, prods, float(prods[k]), g.edges[k])


def equality_gap(g: Graph, s: Spectrum | None = None) -> float:
    """max over edges of |E(i)E(j) - 1|; 0 for edgeless graphs."""
    if g.m == 0:
        return 0.0
    return float(np.abs(edge_energy_products(g, s).products - 1.0).max())


def equality_gap_is_structural(g: Graph, tol: float = 1e-8) -> bool:
    """Check that a vanishing gap coincides with g being a union of bicliques."""
    biclique = all(c.is_complete_bipartite for c in classify_components(g))
    return (equality_gap(g) <= tol) == biclique


# ------------------------------------------------------------ batched helpers

def batch_energies(adjacency: np.ndarray) -> np.ndarray:
    lam, _ = jacobi_eigh(adjacency, vectors=False)
    return np.abs(lam).sum(axis=-1)


def batch_vertex_energies(adjacency: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(energies, vertex energies) for a (B, n, n) stack."""
    lam, u = jacobi_eigh(adjacency)
    ve = np.einsum("bik,bk->bi", u ** 2, np.abs(lam))
    return np.abs(lam).sum(axis=-1), ve
