"""Triplet accumulation into CSR matrices."""

from typing import List

import numpy as np
from scipy.sparse import csr_matrix

from fracflow.errors import IndexOutOfRange

SparseMatrix = csr_matrix


class TripletAccumulator:
    """Single-writer collector of (row, col, value) triplets.

    Blocks of triplets are appended as numpy arrays. Finalization sorts all
    triplets by (row, col, value) before summing duplicates, so the result is
    bitwise independent of the order in which blocks were added.
    """

    def __init__(self, n_rows: int, n_cols: int) -> None:
        if n_rows <= 0 or n_cols <= 0:
            raise ValueError(f"Matrix dimensions must be positive, got ({n_rows}, {n_cols})")
        self.shape = (n_rows, n_cols)
        self._rows: List[np.ndarray] = []
        self._cols: List[np.ndarray] = []
        self._vals: List[np.ndarray] = []

    def add(self, rows: np.ndarray, cols: np.ndarray, vals: np.ndarray) -> None:
        """Append a block of triplets.

        Args:
            rows: Row indices.
            cols: Column indices, same shape as ``rows``.
            vals: Values, same shape as ``rows``.
        """
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        vals = np.asarray(vals, dtype=np.float64).ravel()
        if not (rows.size == cols.size == vals.size):
            raise ValueError("Triplet arrays must have equal length")
        if rows.size == 0:
            return
        n_rows, n_cols = self.shape
        if rows.min() < 0 or rows.max() >= n_rows or cols.min() < 0 or cols.max() >= n_cols:
            raise IndexOutOfRange(
                f"Triplet index outside shape {self.shape}: rows "
                f"[{rows.min()}, {rows.max()}], cols [{cols.min()}, {cols.max()}]"
            )
        self._rows.append(rows)
        self._cols.append(cols)
        self._vals.append(vals)

    def add_local(self, row_dofs: np.ndarray, col_dofs: np.ndarray, local: np.ndarray) -> None:
        """Scatter a stack of element matrices.

        Args:
            row_dofs: ``(n_cells, k)`` test dof indices per cell.
            col_dofs: ``(n_cells, l)`` trial dof indices per cell.
            local: ``(n_cells, k, l)`` element matrices.
        """
        n, k = row_dofs.shape
        l = col_dofs.shape[1]
        rows = np.broadcast_to(row_dofs[:, :, None], (n, k, l))
        cols = np.broadcast_to(col_dofs[:, None, :], (n, k, l))
        self.add(rows, cols, local)

    @property
    def n_triplets(self) -> int:
        return sum(r.size for r in self._rows)

    def finish(self) -> csr_matrix:
        """Sum duplicates and build the CSR matrix."""
        n_rows, n_cols = self.shape
        if not self._rows:
            return csr_matrix(self.shape, dtype=np.float64)

        rows = np.concatenate(self._rows)
        cols = np.concatenate(self._cols)
        vals = np.concatenate(self._vals)

        order = np.lexsort((vals, cols, rows))
        rows, cols, vals = rows[order], cols[order], vals[order]

        key = rows * n_cols + cols
        starts = np.flatnonzero(np.r_[True, key[1:] != key[:-1]])
        data = np.add.reduceat(vals, starts)
        urows = rows[starts]
        ucols = cols[starts]

        indptr = np.zeros(n_rows + 1, dtype=np.int64)
        np.cumsum(np.bincount(urows, minlength=n_rows), out=indptr[1:])
        matrix = csr_matrix((data, ucols, indptr), shape=self.shape)
        matrix.has_sorted_indices = True
        return matrix


def assemble_begin(n_rows: int, n_cols: int) -> TripletAccumulator:
    """Open a triplet accumulator for an ``n_rows x n_cols`` matrix."""
    return TripletAccumulator(n_rows, n_cols)


def assemble_finish(accumulator: TripletAccumulator) -> csr_matrix:
    """Finalize an accumulator into a CSR matrix."""
    return accumulator.finish()
