"""Conduit forms: viscous deformation, divergence and convection."""

from typing import Optional, Union

import numpy as np
from scipy.sparse import csr_matrix

from fracflow.elements import DofMap
from fracflow.mesh import Mesh, Region

from .basis import CellBasis, cell_basis, gradients_from_local, values_from_local
from .fields import FieldVector
from .forms import block_diagonal, scatter
from .interface import assemble_bj_friction
from .params import ModelParams

Wind = Union[FieldVector, np.ndarray]


def _coefficients(wind: Wind) -> np.ndarray:
    return wind.coefficients if isinstance(wind, FieldVector) else np.asarray(wind)


def deformation_local(basis: CellBasis, scale: float) -> np.ndarray:
    """``scale * 2 (D(u), D(v))`` element matrices for both components."""
    g = basis.grads
    w = basis.weights
    k = basis.n_scalar
    n = basis.n_cells
    dot = np.einsum("nq,nqbd,nqad->nba", w, g, g)
    local = np.zeros((n, 2 * k, 2 * k))
    for l in range(2):
        for m in range(2):
            # test component l, trial component m: d_l phi_a * d_m phi_b
            blk = np.einsum("nq,nqa,nqb->nba", w, g[..., l], g[..., m])
            if l == m:
                blk = blk + dot
            local[:, l * k : (l + 1) * k, m * k : (m + 1) * k] = scale * blk
    return local


def assemble_viscous_volume(
    mesh: Mesh, velocity: DofMap, params: ModelParams, cells: Optional[np.ndarray] = None
) -> csr_matrix:
    """``2 nu eta (D(u), D(v))`` over the conduit."""
    velocity.check_region(Region.CONDUIT)
    basis = cell_basis(velocity, cells)
    local = deformation_local(basis, params.nu * params.eta)
    return scatter(velocity, velocity, basis.dofs, basis.dofs, local)


def assemble_conduit_viscous(
    mesh: Mesh,
    velocity: DofMap,
    params: ModelParams,
    cells: Optional[np.ndarray] = None,
    edge_ids: Optional[np.ndarray] = None,
) -> csr_matrix:
    """Deformation term plus Beavers-Joseph friction on the interface.

    Args:
        mesh: Mesh of ``velocity``.
        velocity: MINI dof map.
        params: Model coefficients.
        cells: Optional cell positions restricting the volume term.
        edge_ids: Interface edges for the friction term; all INTERFACE edges
            when None.
    """
    volume = assemble_viscous_volume(mesh, velocity, params, cells)
    if edge_ids is not None and len(edge_ids) == 0:
        return volume
    return (volume + assemble_bj_friction(mesh, velocity, params, edge_ids)).tocsr()


def assemble_divergence(
    mesh: Mesh,
    velocity: DofMap,
    pressure: DofMap,
    eta: float,
    cells: Optional[np.ndarray] = None,
) -> csr_matrix:
    """``B_ij = -eta (psi_i, div phi_j)``, pressure rows and velocity columns."""
    velocity.check_region(Region.CONDUIT)
    pressure.check_region(Region.CONDUIT)
    basis = cell_basis(velocity, cells)
    local = np.concatenate(
        [
            -eta * np.einsum("nq,qi,nqa->nia", basis.weights, basis.p1_values, basis.grads[..., c])
            for c in range(2)
        ],
        axis=2,
    )
    rows = pressure.cell_dofs[basis.positions]
    return scatter(pressure, velocity, rows, basis.dofs, local)


def convection_local(
    basis: CellBasis, wind_local: np.ndarray, eta: float, skew: bool
) -> np.ndarray:
    w = values_from_local(basis, wind_local)  # (n, nq, 2)
    advect = np.einsum("nqd,nqad->nqa", w, basis.grads)
    plain = eta * np.einsum("nq,qb,nqa->nba", basis.weights, basis.values, advect)
    scalar = 0.5 * (plain - np.transpose(plain, (0, 2, 1))) if skew else plain
    return block_diagonal(scalar)


def assemble_convection(
    mesh: Mesh,
    velocity: DofMap,
    wind: Wind,
    eta: float,
    skew: bool = True,
    cells: Optional[np.ndarray] = None,
) -> csr_matrix:
    """Oseen matrix ``N(w)`` for ``eta ((w.grad) u, v)``.

    With ``skew`` the form is ``eta/2 [((w.grad) u, v) - ((w.grad) v, u)]``,
    whose matrix is antisymmetric.
    """
    velocity.check_region(Region.CONDUIT)
    basis = cell_basis(velocity, cells)
    local = convection_local(basis, _coefficients(wind)[basis.dofs], eta, skew)
    return scatter(velocity, velocity, basis.dofs, basis.dofs, local)


def assemble_convection_derivative(
    mesh: Mesh,
    velocity: DofMap,
    state: Wind,
    eta: float,
    skew: bool = True,
    cells: Optional[np.ndarray] = None,
) -> csr_matrix:
    """Matrix of ``e -> b_N(e, U, v)`` with the velocity ``U`` held fixed."""
    velocity.check_region(Region.CONDUIT)
    basis = cell_basis(velocity, cells)
    loc = _coefficients(state)[basis.dofs]
    u = values_from_local(basis, loc)  # (n, nq, 2)
    grad_u = gradients_from_local(basis, loc)  # (n, nq, l, k)
    wv = basis.weights
    vals = basis.values
    k_s = basis.n_scalar
    n = basis.n_cells
    s1 = 0.5 * eta if skew else eta
    local = np.zeros((n, 2 * k_s, 2 * k_s))
    for l in range(2):
        for m in range(2):
            # test (l, b), trial (m, a): phi_a phi_b d_m U_l
            blk = s1 * np.einsum("nq,qa,qb,nq->nba", wv, vals, vals, grad_u[:, :, l, m])
            if skew:
                blk -= 0.5 * eta * np.einsum(
                    "nq,qa,nqb,nq->nba", wv, vals, basis.grads[..., m], u[..., l]
                )
            local[:, l * k_s : (l + 1) * k_s, m * k_s : (m + 1) * k_s] = blk
    return scatter(velocity, velocity, basis.dofs, basis.dofs, local)
