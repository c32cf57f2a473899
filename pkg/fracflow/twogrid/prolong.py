"""Coarse-to-fine transfer on nested meshes."""

import numpy as np
from loguru import logger
from scipy.sparse import csr_matrix, identity

from fracflow.assembly import FieldVector
from fracflow.elements import DofMap
from fracflow.errors import NotNested, RegionMismatch
from fracflow.linalg import assemble_begin, assemble_finish

BARYCENTRIC_TOL = 1e-10


def barycentric(corners: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Barycentric coordinates of ``points[m]`` in triangles ``corners[m, 3, 2]``."""
    x0 = corners[:, 0]
    T = np.stack([corners[:, 1] - x0, corners[:, 2] - x0], axis=2)  # (m, 2, 2)
    l12 = np.linalg.solve(T, (points - x0)[..., None])[..., 0]
    return np.column_stack([1.0 - l12.sum(axis=1), l12])


class Prolongator:
    """Sparse interpolation matrix from a coarse dof map to a fine one.

    Fine vertex values are the coarse P1 interpolant evaluated at the fine
    vertex; coarse bubbles are dropped and fine bubbles are zero.
    """

    def __init__(self, coarse: DofMap, fine: DofMap) -> None:
        if coarse.kind is not fine.kind:
            raise RegionMismatch(f"Cannot prolong {coarse.kind.value} to {fine.kind.value}")
        self.coarse = coarse
        self.fine = fine
        if fine.mesh is coarse.mesh:
            self.matrix = csr_matrix(identity(coarse.n_dofs))
            return
        if fine.mesh.parent_mesh is not coarse.mesh or fine.mesh.parent is None:
            raise NotNested("Fine mesh is not a refinement of the coarse mesh")
        self.matrix = self._build()
        logger.debug(f"Prolongation {coarse.kind.value}: {coarse.n_dofs} -> {fine.n_dofs} dofs")

    def _build(self) -> csr_matrix:
        coarse, fine = self.coarse, self.fine
        try:
            coarse_pos = coarse.cell_positions(fine.mesh.parent[fine.cells])
        except RegionMismatch as e:
            raise NotNested("Fine cells whose parent lies in another region") from e

        flat = fine.mesh.triangles[fine.cells].ravel()
        vertices, first = np.unique(flat, return_index=True)
        cell_of = coarse_pos[first // 3]
        corners = coarse.mesh.vertices[coarse.mesh.triangles[coarse.cells[cell_of]]]
        lam = barycentric(corners, fine.mesh.vertices[vertices])
        if np.any(lam < -BARYCENTRIC_TOL):
            raise NotNested("Fine vertex outside its parent cell")

        acc = assemble_begin(fine.n_dofs, coarse.n_dofs)
        keep = np.abs(lam) > BARYCENTRIC_TOL
        components = 2 if fine.is_vector else 1
        for k in range(components):
            rows = np.repeat(fine.vertex_dofs(vertices, k), 3).reshape(-1, 3)
            cols = coarse.cell_dofs[cell_of][:, 4 * k : 4 * k + 3]
            acc.add(rows[keep], cols[keep], lam[keep])
        return assemble_finish(acc)

    def __call__(self, field: FieldVector) -> FieldVector:
        if field.dofmap is not self.coarse:
            raise RegionMismatch("Field does not live on the coarse dof map of this prolongator")
        return FieldVector(self.fine, self.matrix @ field.coefficients, field.time)


def prolong(coarse_field: FieldVector, fine: DofMap) -> FieldVector:
    """Interpolate ``coarse_field`` onto ``fine``."""
    return Prolongator(coarse_field.dofmap, fine)(coarse_field)
