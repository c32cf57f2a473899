"""Interface terms on the porous/conduit boundary and edge loads."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix

from fracflow.elements import EDGE_POINTS, EDGE_WEIGHTS, DofMap
from fracflow.errors import MissingInterfaceTags, NonMatchingInterface
from fracflow.mesh import EdgeTag, Mesh

from .fields import SpaceTimeFunction, evaluate
from .forms import scatter
from .params import ModelParams

# P1 mass on a unit-length edge
EDGE_MASS = np.array([[1.0 / 3.0, 1.0 / 6.0], [1.0 / 6.0, 1.0 / 3.0]])


@dataclass(frozen=True, eq=False)
class EdgeGeometry:
    """Lengths, tangents and conduit-outward normals of a set of edges."""

    edge_ids: np.ndarray
    a: np.ndarray
    b: np.ndarray
    length: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray

    @property
    def n_edges(self) -> int:
        return int(self.edge_ids.size)


def edge_geometry(mesh: Mesh, edge_ids: np.ndarray) -> EdgeGeometry:
    """Geometry of stored edges; normals point out of the adjacent conduit cell.

    Edges without a conduit cell get normals pointing out of their porous cell.
    """
    edge_ids = np.asarray(edge_ids, dtype=np.int64)
    a = mesh.edges[edge_ids, 0]
    b = mesh.edges[edge_ids, 1]
    d = mesh.vertices[b] - mesh.vertices[a]
    length = np.hypot(d[:, 0], d[:, 1])
    tangent = d / length[:, None]
    normal = np.column_stack([tangent[:, 1], -tangent[:, 0]])

    cell = mesh.edge_conduit_cell[edge_ids]
    cell = np.where(cell >= 0, cell, mesh.edge_porous_cell[edge_ids])
    mid = 0.5 * (mesh.vertices[a] + mesh.vertices[b])
    centroid = mesh.barycenters()[cell] if edge_ids.size else np.empty((0, 2))
    flip = np.einsum("ed,ed->e", normal, mid - centroid) < 0
    normal[flip] *= -1.0
    return EdgeGeometry(edge_ids, a, b, length, tangent, normal)


def interface_edges(mesh: Mesh, edge_ids: Optional[np.ndarray] = None) -> np.ndarray:
    """Validated INTERFACE edge ids (all of them when ``edge_ids`` is None)."""
    if edge_ids is None:
        edge_ids = mesh.edges_with_tag(EdgeTag.INTERFACE)
        if edge_ids.size == 0:
            raise MissingInterfaceTags("Mesh has no INTERFACE edges")
    edge_ids = np.asarray(edge_ids, dtype=np.int64)
    if np.any(mesh.edge_porous_cell[edge_ids] < 0) or np.any(mesh.edge_conduit_cell[edge_ids] < 0):
        raise NonMatchingInterface("Interface edge without a porous or a conduit neighbour")
    return edge_ids


def _velocity_edge_dofs(velocity: DofMap, geo: EdgeGeometry) -> np.ndarray:
    """``(m, 4)`` dofs ordered [a_x, b_x, a_y, b_y]."""
    return np.column_stack(
        [
            velocity.vertex_dofs(geo.a, 0),
            velocity.vertex_dofs(geo.b, 0),
            velocity.vertex_dofs(geo.a, 1),
            velocity.vertex_dofs(geo.b, 1),
        ]
    )


def _scalar_edge_dofs(dofmap: DofMap, geo: EdgeGeometry) -> np.ndarray:
    return np.column_stack([dofmap.vertex_dofs(geo.a), dofmap.vertex_dofs(geo.b)])


def assemble_bj_friction(
    mesh: Mesh, velocity: DofMap, params: ModelParams, edge_ids: Optional[np.ndarray] = None
) -> csr_matrix:
    """Tangential friction ``c <u.t, v.t>`` on the interface."""
    geo = edge_geometry(mesh, interface_edges(mesh, edge_ids))
    dofs = _velocity_edge_dofs(velocity, geo)
    tt = np.einsum("el,ek->elk", geo.tangent, geo.tangent)
    # local[e, (l, i), (k, j)] = c t_l t_k L M_ij
    local = np.einsum("elk,e,ij->elikj", tt, params.bj_friction * geo.length, EDGE_MASS)
    return scatter(velocity, velocity, dofs, dofs, local.reshape(-1, 4, 4))


@dataclass(frozen=True, eq=False)
class InterfaceCoupling:
    """Cross-region interface matrices.

    Attributes:
        B1: Normal traction ``eta/rho <p_F, v.n_c>``; velocity rows, porous columns.
        B2: Normal flux ``-<v_F, u.n_c>``; porous rows, velocity columns.
        B3: Tangential gradient load ``c <d_t p_F, v.t>``; velocity rows, porous columns.
    """

    B1: csr_matrix
    B2: csr_matrix
    B3: csr_matrix


def assemble_interface_coupling(
    mesh: Mesh,
    porous: DofMap,
    velocity: DofMap,
    params: ModelParams,
    edge_ids: Optional[np.ndarray] = None,
) -> InterfaceCoupling:
    """Assemble the three interface coupling matrices on the given edges."""
    geo = edge_geometry(mesh, interface_edges(mesh, edge_ids))
    vdofs = _velocity_edge_dofs(velocity, geo)
    pdofs = _scalar_edge_dofs(porous, geo)

    # normal[e, k] * L * M_ij, arranged [e, (k, i), j]
    nLM = np.einsum("ek,e,ij->ekij", geo.normal, geo.length, EDGE_MASS).reshape(-1, 4, 2)
    B1 = scatter(velocity, porous, vdofs, pdofs, (params.eta / params.rho) * nLM)
    B2 = scatter(porous, velocity, pdofs, vdofs, -np.transpose(nLM, (0, 2, 1)))

    # d_t p_F = (p_b - p_a) / L is constant per edge and the P1 trace integrates to L/2
    grad = np.array([-0.5, 0.5])
    local3 = params.bj_gradient * np.einsum("ek,i,j->ekij", geo.tangent, np.ones(2), grad)
    B3 = scatter(velocity, porous, vdofs, pdofs, local3.reshape(-1, 4, 2))
    return InterfaceCoupling(B1=B1, B2=B2, B3=B3)


def assemble_edge_load(
    mesh: Mesh,
    dofmap: DofMap,
    edge_ids: np.ndarray,
    source: SpaceTimeFunction,
    t: float,
    scale: float = 1.0,
) -> np.ndarray:
    """``scale * <g, v>`` over edges with two-point Gauss per edge.

    ``source`` returns a scalar for scalar spaces and a pair for MINI.
    """
    out = np.zeros(dofmap.n_dofs)
    if len(edge_ids) == 0:
        return out
    geo = edge_geometry(mesh, edge_ids)
    pa = mesh.vertices[geo.a]
    pb = mesh.vertices[geo.b]
    pts = pa[:, None, :] + EDGE_POINTS[None, :, None] * (pb - pa)[:, None, :]  # (m, 2, 2)
    shape = np.column_stack([1.0 - EDGE_POINTS, EDGE_POINTS])  # [gauss, node]
    g = evaluate(source, pts, t)
    w = scale * geo.length[:, None] * EDGE_WEIGHTS[None, :]
    if dofmap.is_vector:
        local = np.einsum("eg,egk,gi->eki", w, g, shape).reshape(-1, 4)
        dofs = _velocity_edge_dofs(dofmap, geo)
    else:
        local = np.einsum("eg,eg,gi->ei", w, g, shape)
        dofs = _scalar_edge_dofs(dofmap, geo)
    return np.bincount(dofs.ravel(), weights=local.ravel(), minlength=dofmap.n_dofs)
