"""Scalar porous forms: mass, stiffness and inter-continuum exchange."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix

from fracflow.elements import DofMap
from fracflow.linalg import assemble_begin, assemble_finish
from fracflow.mesh import Mesh, Region

from .basis import CellBasis, cell_basis
from .params import ModelParams


def scatter(
    row_map: DofMap, col_map: DofMap, rows: np.ndarray, cols: np.ndarray, local: np.ndarray
) -> csr_matrix:
    acc = assemble_begin(row_map.n_dofs, col_map.n_dofs)
    acc.add_local(rows, cols, local)
    return assemble_finish(acc)


def block_diagonal(local: np.ndarray) -> np.ndarray:
    """Two-component block diagonal of scalar element matrices."""
    n, k, _ = local.shape
    out = np.zeros((n, 2 * k, 2 * k))
    out[:, :k, :k] = local
    out[:, k:, k:] = local
    return out


def mass_local(basis: CellBasis) -> np.ndarray:
    return np.einsum("nq,qb,qa->nba", basis.weights, basis.values, basis.values)


def stiffness_local(basis: CellBasis) -> np.ndarray:
    return np.einsum("nq,nqbd,nqad->nba", basis.weights, basis.grads, basis.grads)


def assemble_mass(
    mesh: Mesh,
    dofmap: DofMap,
    coefficient: float,
    region: Region,
    cells: Optional[np.ndarray] = None,
) -> csr_matrix:
    """Weighted mass matrix ``coefficient * (u, v)`` over ``region``.

    For the MINI space the matrix acts on both components.

    Args:
        mesh: Mesh of ``dofmap``.
        dofmap: Space on ``region``.
        coefficient: Scalar weight.
        region: Must match the dof map.
        cells: Optional positions in ``dofmap.cells`` restricting the integral.
    """
    dofmap.check_region(region)
    basis = cell_basis(dofmap, cells)
    local = coefficient * mass_local(basis)
    if dofmap.is_vector:
        local = block_diagonal(local)
    return scatter(dofmap, dofmap, basis.dofs, basis.dofs, local)


def assemble_stiffness(
    mesh: Mesh,
    dofmap: DofMap,
    coefficient: float,
    region: Region,
    cells: Optional[np.ndarray] = None,
) -> csr_matrix:
    """Diffusion matrix ``coefficient * (grad u, grad v)`` over ``region``."""
    dofmap.check_region(region)
    basis = cell_basis(dofmap, cells)
    local = coefficient * stiffness_local(basis)
    if dofmap.is_vector:
        local = block_diagonal(local)
    return scatter(dofmap, dofmap, basis.dofs, basis.dofs, local)


@dataclass(frozen=True, eq=False)
class ExchangeMatrices:
    """Transfer matrices between continua, each ``c * M``.

    The macrofracture equation reads ``c_Ff M p_F - F_f p_f`` for its
    exchange; the other equations follow the same pattern, so a continuum
    loses exactly what its partner gains.

    Attributes:
        F_f: Microfracture pressure into the macrofracture equation.
        f_F: Macrofracture pressure into the microfracture equation.
        f_m: Matrix pressure into the microfracture equation.
        m_f: Microfracture pressure into the matrix equation.
        mass: Unit mass matrix the transfers are built from.
    """

    F_f: csr_matrix
    f_F: csr_matrix
    f_m: csr_matrix
    m_f: csr_matrix
    mass: csr_matrix
    c_Ff: float
    c_fm: float

    def residual_F(self, p_F: np.ndarray, p_f: np.ndarray) -> np.ndarray:
        return self.c_Ff * (self.mass @ p_F) - self.F_f @ p_f

    def residual_f(self, p_F: np.ndarray, p_f: np.ndarray, p_m: np.ndarray) -> np.ndarray:
        return (self.c_Ff + self.c_fm) * (self.mass @ p_f) - self.f_F @ p_F - self.f_m @ p_m

    def residual_m(self, p_f: np.ndarray, p_m: np.ndarray) -> np.ndarray:
        return self.c_fm * (self.mass @ p_m) - self.m_f @ p_f


def assemble_exchange(
    mesh: Mesh,
    dofmap: DofMap,
    params: ModelParams,
    cells: Optional[np.ndarray] = None,
) -> ExchangeMatrices:
    """Shape-factor exchange between the three porous continua."""
    mass = assemble_mass(mesh, dofmap, 1.0, Region.POROUS, cells)
    c_Ff = params.exchange_Ff
    c_fm = params.exchange_fm
    return ExchangeMatrices(
        F_f=c_Ff * mass,
        f_F=c_Ff * mass,
        f_m=c_fm * mass,
        m_f=c_fm * mass,
        mass=mass,
        c_Ff=c_Ff,
        c_fm=c_fm,
    )
