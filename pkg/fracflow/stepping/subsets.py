"""Dof subsets of a region for global and subdomain-local systems."""

from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix, spmatrix

from fracflow.elements import DofMap
from fracflow.errors import NonDivisibleStep


def active_dofs(dofmap: DofMap, positions: Optional[np.ndarray] = None) -> np.ndarray:
    """Sorted dofs touched by the selected cells (all dofs when None)."""
    if positions is None:
        return np.arange(dofmap.n_dofs, dtype=np.int64)
    return np.unique(dofmap.cell_dofs[np.asarray(positions, dtype=np.int64)])


def local_index(active: np.ndarray, dofs: np.ndarray) -> np.ndarray:
    """Positions of ``dofs`` inside the sorted ``active`` array."""
    dofs = np.asarray(dofs, dtype=np.int64)
    idx = np.searchsorted(active, dofs)
    inside = idx < active.size
    if not inside.all() or np.any(active[idx[inside]] != dofs[inside]):
        raise ValueError("Constrained dofs outside the active set")
    return idx


def restrict(matrix: spmatrix, rows: np.ndarray, cols: np.ndarray) -> csr_matrix:
    m = csr_matrix(matrix)
    if rows.size == m.shape[0] and cols.size == m.shape[1]:
        return m
    return m[rows][:, cols].tocsr()


def artificial_vertices(dofmap: DofMap, positions: np.ndarray) -> np.ndarray:
    """Global vertices shared by selected cells and the region's other cells."""
    inside = np.zeros(dofmap.n_cells, dtype=bool)
    inside[np.asarray(positions, dtype=np.int64)] = True
    tri = dofmap.mesh.triangles[dofmap.cells]
    return np.intersect1d(np.unique(tri[inside]), np.unique(tri[~inside]))


def count_steps(T: float, dt: float) -> int:
    """Number of steps of size ``dt`` covering ``[0, T]``."""
    n = int(round(T / dt))
    if n < 1 or abs(n * dt - T) > 1e-9 * max(1.0, T):
        raise NonDivisibleStep(f"dt={dt!r} does not divide T={T!r}")
    return n
