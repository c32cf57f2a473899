"""Direct sparse LU solves."""

import numpy as np
from loguru import logger
from scipy.sparse import csc_matrix, spmatrix
from scipy.sparse.linalg import splu

from fracflow.errors import SingularMatrix, SolverFailure

PIVOT_TOLERANCE = 1e-14


class LUFactor:
    """Reusable LU factorization of a square sparse matrix.

    Each instance owns its SuperLU object, so independent factors may be
    solved from different threads.
    """

    def __init__(self, matrix: spmatrix, pivot_tolerance: float = PIVOT_TOLERANCE) -> None:
        n_rows, n_cols = matrix.shape
        if n_rows != n_cols:
            raise SolverFailure(f"LU needs a square matrix, got {matrix.shape}")
        self.n = n_rows
        a = csc_matrix(matrix, dtype=np.float64)
        try:
            self._lu = splu(a)
        except RuntimeError as e:
            raise SingularMatrix(f"Factorization failed: {e}") from e

        scale = float(abs(a).max()) if a.nnz else 0.0
        pivots = np.abs(self._lu.U.diagonal())
        if scale == 0.0 or pivots.min() <= pivot_tolerance * scale:
            raise SingularMatrix(
                f"Zero pivot in LU factorization (min |pivot| {pivots.min():.3e}, "
                f"max |entry| {scale:.3e})"
            )
        logger.debug(f"LU factorized n={self.n}, nnz(L+U)={self._lu.L.nnz + self._lu.U.nnz}")

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve for one right-hand side."""
        rhs = np.asarray(rhs, dtype=np.float64)
        if rhs.shape[0] != self.n:
            raise SolverFailure(f"Right-hand side length {rhs.shape[0]} != {self.n}")
        x = self._lu.solve(rhs)
        if not np.all(np.isfinite(x)):
            raise SolverFailure("LU solve produced non-finite values")
        return x


def lu_solve(matrix: spmatrix, rhs: np.ndarray) -> np.ndarray:
    """Factorize ``matrix`` and solve ``matrix @ x = rhs``."""
    return LUFactor(matrix).solve(rhs)
