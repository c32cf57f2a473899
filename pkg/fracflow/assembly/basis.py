"""Physical basis values, gradients and quadrature data per cell."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from fracflow.elements import DofMap, bubble_bary_derivatives, bubble_values, quadrature

DEFAULT_ORDER = 5


@dataclass(frozen=True, eq=False)
class CellBasis:
    """Scalar basis functions of a dof map evaluated on a set of cells.

    For MINI the scalar basis is (l0, l1, l2, bubble) and is shared by both
    velocity components.

    Attributes:
        positions: Rows of ``dofmap.cell_dofs`` covered.
        dofs: ``dofmap.cell_dofs[positions]``.
        weights: ``(n, nq)`` physical quadrature weights.
        points: ``(n, nq, 2)`` physical quadrature points.
        values: ``(nq, k)`` basis values.
        grads: ``(n, nq, k, 2)`` physical basis gradients.
        p1_values: ``(nq, 3)`` barycentric coordinates at the points.
    """

    positions: np.ndarray
    dofs: np.ndarray
    weights: np.ndarray
    points: np.ndarray
    values: np.ndarray
    grads: np.ndarray
    p1_values: np.ndarray

    @property
    def n_cells(self) -> int:
        return int(self.positions.size)

    @property
    def n_scalar(self) -> int:
        return int(self.values.shape[1])


def gradient_lambda(vertices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gradients of the barycentric coordinates and twice the areas.

    Args:
        vertices: ``(n, 3, 2)`` triangle corners.
    """
    x = vertices[..., 0]
    y = vertices[..., 1]
    area2 = (x[:, 1] - x[:, 0]) * (y[:, 2] - y[:, 0]) - (x[:, 2] - x[:, 0]) * (y[:, 1] - y[:, 0])
    i1 = [1, 2, 0]
    i2 = [2, 0, 1]
    grads = np.stack([y[:, i1] - y[:, i2], x[:, i2] - x[:, i1]], axis=-1)
    return grads / area2[:, None, None], area2


def cell_basis(
    dofmap: DofMap, positions: Optional[np.ndarray] = None, order: int = DEFAULT_ORDER
) -> CellBasis:
    """Evaluate the scalar basis of ``dofmap`` on the selected cells."""
    if positions is None:
        positions = np.arange(dofmap.n_cells)
    positions = np.asarray(positions, dtype=np.int64)
    mesh = dofmap.mesh
    corners = mesh.vertices[mesh.triangles[dofmap.cells[positions]]]
    grad_lambda, area2 = gradient_lambda(corners)

    rule = quadrature(order)
    points = np.einsum("qi,nid->nqd", rule.points, corners)
    weights = rule.weights[None, :] * area2[:, None]
    n, nq = positions.size, rule.n_points

    grads = np.broadcast_to(grad_lambda[:, None, :, :], (n, nq, 3, 2))
    values = rule.points
    if dofmap.is_vector:
        dbub = bubble_bary_derivatives(rule.points)
        bubble_grad = np.einsum("qi,nid->nqd", dbub, grad_lambda)
        grads = np.concatenate([grads, bubble_grad[:, :, None, :]], axis=2)
        values = np.column_stack([rule.points, bubble_values(rule.points)])

    return CellBasis(
        positions=positions,
        dofs=dofmap.cell_dofs[positions],
        weights=weights,
        points=points,
        values=values,
        grads=np.ascontiguousarray(grads),
        p1_values=rule.points,
    )


def local_values(basis: CellBasis, coefficients: np.ndarray) -> np.ndarray:
    """Field values at quadrature points, ``(n, nq)`` or ``(n, nq, 2)``."""
    return values_from_local(basis, coefficients[basis.dofs])


def values_from_local(basis: CellBasis, loc: np.ndarray) -> np.ndarray:
    """Like ``local_values`` but from per-cell coefficients ``(n, 3|8)``."""
    k = basis.n_scalar
    if loc.shape[1] == k:
        return loc @ basis.values.T
    return np.stack([loc[:, :k] @ basis.values.T, loc[:, k:] @ basis.values.T], axis=-1)


def local_gradients(basis: CellBasis, coefficients: np.ndarray) -> np.ndarray:
    """Field gradients at quadrature points, ``(n, nq, 2)`` or ``(n, nq, 2, 2)``.

    For vector fields entry ``[..., l, k]`` is the derivative of component
    ``l`` along axis ``k``.
    """
    return gradients_from_local(basis, coefficients[basis.dofs])


def gradients_from_local(basis: CellBasis, loc: np.ndarray) -> np.ndarray:
    k = basis.n_scalar
    if loc.shape[1] == k:
        return np.einsum("na,nqad->nqd", loc, basis.grads)
    return np.stack(
        [
            np.einsum("na,nqad->nqd", loc[:, :k], basis.grads),
            np.einsum("na,nqad->nqd", loc[:, k:], basis.grads),
        ],
        axis=2,
    )
