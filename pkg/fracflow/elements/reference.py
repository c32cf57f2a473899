"""Reference shape functions: P1 hats and the cubic bubble."""

from typing import Tuple

import numpy as np

from fracflow.errors import InvalidBarycentric

BARY_TOL = 1e-12

# Reference gradients of the barycentric coordinates for vertices
# (0,0), (1,0), (0,1)
REF_GRAD_LAMBDA = np.array([[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]])


def _check(point: np.ndarray) -> np.ndarray:
    lam = np.asarray(point, dtype=np.float64)
    if lam.shape[-1] != 3:
        raise InvalidBarycentric(f"Expected 3 barycentric coordinates, got shape {lam.shape}")
    if np.any(lam < -BARY_TOL) or np.any(np.abs(lam.sum(axis=-1) - 1.0) > BARY_TOL):
        raise InvalidBarycentric(f"Invalid barycentric coordinates {lam}")
    return lam


def p1_shape(point: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Values and reference gradients of the three P1 hats at one point."""
    lam = _check(point)
    return lam.copy(), REF_GRAD_LAMBDA.copy()


def bubble_shape(point: np.ndarray) -> Tuple[float, np.ndarray]:
    """Value and reference gradient of ``27 l0 l1 l2`` at one point."""
    lam = _check(point)
    value = 27.0 * lam[0] * lam[1] * lam[2]
    dlam = bubble_bary_derivatives(lam[None, :])[0]
    return float(value), dlam @ REF_GRAD_LAMBDA


def p1_values(points: np.ndarray) -> np.ndarray:
    """``(n_points, 3)`` P1 values at barycentric points (unchecked)."""
    return np.asarray(points, dtype=np.float64)


def bubble_values(points: np.ndarray) -> np.ndarray:
    lam = np.asarray(points, dtype=np.float64)
    return 27.0 * lam[:, 0] * lam[:, 1] * lam[:, 2]


def bubble_bary_derivatives(points: np.ndarray) -> np.ndarray:
    """Partial derivatives of the bubble with respect to each barycentric coordinate."""
    lam = np.asarray(points, dtype=np.float64)
    return 27.0 * np.column_stack(
        [lam[:, 1] * lam[:, 2], lam[:, 0] * lam[:, 2], lam[:, 0] * lam[:, 1]]
    )
