"""Symmetric elimination of essential conditions."""

from typing import Tuple

import numpy as np
from scipy.sparse import csr_matrix, diags, spmatrix

from fracflow.errors import MissingBoundaryValue


def _check(dofs: np.ndarray, values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    dofs = np.asarray(dofs, dtype=np.int64)
    values = np.asarray(values, dtype=np.float64)
    if values.shape != dofs.shape:
        raise MissingBoundaryValue(f"{dofs.size} constrained dofs but {values.size} boundary values")
    if not np.all(np.isfinite(values)):
        raise MissingBoundaryValue("Non-finite boundary values")
    return dofs, values


def constrain_matrix(matrix: spmatrix, dofs: np.ndarray) -> csr_matrix:
    """Zero constrained rows and columns and put 1 on their diagonal."""
    n = matrix.shape[0]
    keep = np.ones(n)
    keep[np.asarray(dofs, dtype=np.int64)] = 0.0
    d = diags(keep)
    return (d @ matrix @ d + diags(1.0 - keep)).tocsr()


def constrain_rhs(
    matrix: spmatrix, rhs: np.ndarray, dofs: np.ndarray, values: np.ndarray
) -> np.ndarray:
    """Move constrained columns to the right side and set the constrained entries.

    ``matrix`` is the unconstrained operator.
    """
    dofs, values = _check(dofs, values)
    lift = np.zeros(matrix.shape[1])
    lift[dofs] = values
    out = np.asarray(rhs, dtype=np.float64) - matrix @ lift
    out[dofs] = values
    return out


def apply_dirichlet(
    matrix: spmatrix, rhs: np.ndarray, dofs: np.ndarray, values: np.ndarray
) -> Tuple[csr_matrix, np.ndarray]:
    """Impose ``x[dofs] = values`` by symmetric elimination.

    Args:
        matrix: Square system matrix.
        rhs: Right-hand side.
        dofs: Constrained dof indices.
        values: Prescribed values, aligned with ``dofs``.

    Returns:
        Constrained matrix and right-hand side.
    """
    new_rhs = constrain_rhs(matrix, rhs, dofs, values)
    return constrain_matrix(matrix, dofs), new_rhs
