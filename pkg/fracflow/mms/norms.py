"""Error norms, piecewise subdomain norms and the discrete inf-sup constant."""

from enum import Enum
from typing import List, Optional

import numpy as np
import scipy.linalg
from loguru import logger
from scipy.sparse.linalg import splu

from fracflow.assembly import (
    CellBasis,
    FieldVector,
    assemble_divergence,
    assemble_mass,
    assemble_stiffness,
    cell_basis,
    evaluate,
    gradients_from_local,
    values_from_local,
)
from fracflow.elements import DofMap, build_spaces
from fracflow.errors import MissingCorrection
from fracflow.mesh import Mesh, Region
from fracflow.twogrid import CompositeSolution

from .example1 import ExactField


class NormKind(Enum):
    """Error measures."""

    L2 = "l2"
    H1_SEMI = "h1_semi"


def _squared_error(
    basis: CellBasis, local: np.ndarray, exact: ExactField, t: float, which: NormKind
) -> float:
    pts = basis.points
    if which is NormKind.L2:
        diff = values_from_local(basis, local) - evaluate(exact.value, pts, t)
    else:
        diff = gradients_from_local(basis, local) - exact.gradient(pts[..., 0], pts[..., 1], t)
    sq = diff**2
    while sq.ndim > 2:
        sq = sq.sum(axis=-1)
    return float(np.einsum("nq,nq->", basis.weights, sq))


def _positions(dofmap: DofMap, cells: Optional[np.ndarray]) -> Optional[np.ndarray]:
    return None if cells is None else dofmap.cell_positions(cells)


def compute_norms(
    field: FieldVector,
    exact: ExactField,
    t: float,
    which: NormKind = NormKind.L2,
    cells: Optional[np.ndarray] = None,
) -> float:
    """Norm of ``field - exact`` at time ``t`` with the order-5 rule.

    Args:
        field: Discrete field.
        exact: Exact value and gradient.
        t: Evaluation time of ``exact``.
        which: L2 norm or H1 seminorm.
        cells: Optional global cell ids restricting the integral.
    """
    basis = cell_basis(field.dofmap, _positions(field.dofmap, cells))
    local = field.coefficients[basis.dofs]
    return float(np.sqrt(_squared_error(basis, local, exact, t, which)))


def subdomain_errors(
    composite: CompositeSolution, name: str, exact: ExactField, t: float, which: NormKind
) -> List[float]:
    """Norms over each disjoint subdomain of the field's region, in index order."""
    dofmap = composite.dofmap(name)
    values = composite.cell_values[name]
    out = []
    for sub in composite.decomposition.for_region(dofmap.region):
        if sub.owned.size == 0:
            out.append(0.0)
            continue
        if sub.index not in composite.corrections.fields:
            raise MissingCorrection(f"No correction for subdomain {sub.index}")
        positions = dofmap.cell_positions(sub.owned)
        basis = cell_basis(dofmap, positions)
        out.append(float(np.sqrt(_squared_error(basis, values[positions], exact, t, which))))
    return out


def compute_piecewise_norms(
    composite: CompositeSolution,
    name: str,
    exact: ExactField,
    t: float,
    which: NormKind = NormKind.L2,
) -> float:
    """Square root of the sum of squared errors over the disjoint subdomains."""
    parts = subdomain_errors(composite, name, exact, t, which)
    return float(np.sqrt(np.sum(np.square(parts))))


def infsup_constant(mesh: Mesh) -> float:
    """Discrete inf-sup constant of the MINI/P1 pair on the conduit.

    Velocities vanish on the whole conduit boundary and pressures are taken
    modulo constants; the constant is the square root of the smallest nonzero
    generalized eigenvalue of ``B A^-1 B^T`` against the pressure mass matrix.
    """
    spaces = build_spaces(mesh)
    velocity, pressure = spaces.velocity, spaces.pressure
    A = assemble_stiffness(mesh, velocity, 1.0, Region.CONDUIT).tocsc()
    B = assemble_divergence(mesh, velocity, pressure, 1.0)
    M = assemble_mass(mesh, pressure, 1.0, Region.CONDUIT).toarray()

    # every stored edge with a conduit cell lies on the conduit boundary
    vertices = np.unique(mesh.edges[mesh.edge_conduit_cell >= 0])
    fixed = np.concatenate([velocity.vertex_dofs(vertices, k) for k in range(2)])
    free = np.setdiff1d(np.arange(velocity.n_dofs), fixed)

    A_free = A[free][:, free].tocsc()
    Bt = B[:, free].T.toarray()
    S = B[:, free] @ splu(A_free).solve(Bt)
    S = 0.5 * (S + S.T)
    eigenvalues = scipy.linalg.eigh(S, M, eigvals_only=True)
    # the smallest eigenvalue belongs to the constant pressure mode
    beta = float(np.sqrt(max(eigenvalues[1], 0.0)))
    logger.debug(f"Inf-sup constant at h={mesh.h:g}: {beta:.6f}")
    return beta
