"""Degree-of-freedom maps for the porous and conduit spaces."""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from loguru import logger

from fracflow.errors import RegionMismatch
from fracflow.mesh import EdgeTag, Mesh, Region


class ElementKind(Enum):
    """Finite element spaces used by the solver."""

    P1_SCALAR = "p1_scalar"  # porous pressures
    MINI_VECTOR = "mini_vector"  # conduit velocity, P1 + cubic bubble per component
    P1_SCALAR_CONDUIT = "p1_scalar_conduit"  # conduit pressure

    @property
    def region(self) -> Region:
        return Region.POROUS if self is ElementKind.P1_SCALAR else Region.CONDUIT

    @property
    def local_size(self) -> int:
        return 8 if self is ElementKind.MINI_VECTOR else 3


@dataclass(frozen=True, eq=False)
class DofMap:
    """Dense dof numbering of one space on its region.

    Scalar spaces number the region's vertices by ascending global index.
    The MINI space stores, per component ``k``, the vertex dofs followed by
    the bubble dofs: ``k * (n_vertices + n_cells) + local``.

    Attributes:
        kind: Element kind.
        mesh: Mesh the map lives on.
        cells: Global ids of the region's cells.
        cell_dofs: ``(len(cells), 3 or 8)`` dofs per cell.
        n_dofs: Number of dofs.
        dirichlet_set: Sorted essential dofs.
        vertex_index: Global vertex id to region-local vertex index, or -1.
        region_vertices: Region-local vertex index to global vertex id.
    """

    kind: ElementKind
    mesh: Mesh
    cells: np.ndarray
    cell_dofs: np.ndarray
    n_dofs: int
    dirichlet_set: np.ndarray
    vertex_index: np.ndarray
    region_vertices: np.ndarray

    @property
    def region(self) -> Region:
        return self.kind.region

    @property
    def n_vertices(self) -> int:
        return int(self.region_vertices.size)

    @property
    def n_cells(self) -> int:
        return int(self.cells.size)

    @property
    def is_vector(self) -> bool:
        return self.kind is ElementKind.MINI_VECTOR

    @property
    def component_stride(self) -> int:
        return self.n_vertices + self.n_cells

    def vertex_dofs(self, vertices: np.ndarray, component: int = 0) -> np.ndarray:
        """Dofs attached to global vertices (must belong to the region)."""
        local = self.vertex_index[np.asarray(vertices)]
        if np.any(local < 0):
            raise RegionMismatch(f"Vertices outside the {self.region.name} region")
        return local + component * self.component_stride if self.is_vector else local

    def bubble_dofs(self, component: int) -> np.ndarray:
        start = component * self.component_stride + self.n_vertices
        return np.arange(start, start + self.n_cells)

    def dof_coordinates(self) -> np.ndarray:
        """Coordinates of the vertex dofs of one component."""
        return self.mesh.vertices[self.region_vertices]

    def cell_positions(self, global_cells: np.ndarray) -> np.ndarray:
        """Row positions in ``cell_dofs`` of the given global cells."""
        lookup = np.full(self.mesh.n_cells, -1, dtype=np.int64)
        lookup[self.cells] = np.arange(self.n_cells)
        pos = lookup[np.asarray(global_cells)]
        if np.any(pos < 0):
            raise RegionMismatch(f"Cells outside the {self.region.name} region")
        return pos

    def check_region(self, region: Region) -> None:
        if region != self.region:
            raise RegionMismatch(f"{self.kind.value} lives on {self.region.name}, not {region.name}")


def _edge_vertices(mesh: Mesh, tag: EdgeTag) -> np.ndarray:
    return mesh.edges[mesh.edges_with_tag(tag)]


def build_dofmap(mesh: Mesh, kind: ElementKind) -> DofMap:
    """Number the dofs of ``kind`` on its region of ``mesh``.

    Essential dofs: porous P1 on OUTER_P vertices; MINI on OUTER_C vertices
    (both components) and the normal component on CASED vertices. Interface
    and bubble dofs are never essential.
    """
    cells = mesh.region_cells(kind.region)
    if cells.size == 0:
        raise RegionMismatch(f"Mesh has no {kind.region.name} cells for {kind.value}")

    tri = mesh.triangles[cells]
    region_vertices = np.unique(tri)
    vertex_index = np.full(mesh.n_vertices, -1, dtype=np.int64)
    vertex_index[region_vertices] = np.arange(region_vertices.size)
    local_tri = vertex_index[tri]
    nv, nc = region_vertices.size, cells.size

    if kind is ElementKind.MINI_VECTOR:
        stride = nv + nc
        bubble = nv + np.arange(nc)[:, None]
        comp0 = np.hstack([local_tri, bubble])
        cell_dofs = np.hstack([comp0, comp0 + stride])
        n_dofs = 2 * stride

        essential = [vertex_index[np.unique(_edge_vertices(mesh, EdgeTag.OUTER_C))]]
        essential.append(essential[0] + stride)
        cased = _edge_vertices(mesh, EdgeTag.CASED)
        if cased.size:
            d = mesh.vertices[cased[:, 1]] - mesh.vertices[cased[:, 0]]
            vertical = np.abs(d[:, 0]) < np.abs(d[:, 1])
            # normal of a vertical edge is x, of a horizontal edge is y
            essential.append(vertex_index[np.unique(cased[vertical])])
            essential.append(vertex_index[np.unique(cased[~vertical])] + stride)
        dirichlet = np.unique(np.concatenate(essential)).astype(np.int64)
    else:
        cell_dofs = local_tri
        n_dofs = nv
        if kind is ElementKind.P1_SCALAR:
            dirichlet = vertex_index[np.unique(_edge_vertices(mesh, EdgeTag.OUTER_P))]
        else:
            dirichlet = np.empty(0, dtype=np.int64)
        dirichlet = np.unique(dirichlet).astype(np.int64)

    logger.debug(f"DofMap {kind.value}: {n_dofs} dofs, {dirichlet.size} essential")
    return DofMap(
        kind=kind,
        mesh=mesh,
        cells=cells,
        cell_dofs=cell_dofs.astype(np.int64),
        n_dofs=int(n_dofs),
        dirichlet_set=dirichlet,
        vertex_index=vertex_index,
        region_vertices=region_vertices,
    )


@dataclass(frozen=True, eq=False)
class Spaces:
    """The three dof maps of one mesh."""

    mesh: Mesh
    porous: DofMap
    velocity: DofMap
    pressure: DofMap


def build_spaces(mesh: Mesh) -> Spaces:
    return Spaces(
        mesh=mesh,
        porous=build_dofmap(mesh, ElementKind.P1_SCALAR),
        velocity=build_dofmap(mesh, ElementKind.MINI_VECTOR),
        pressure=build_dofmap(mesh, ElementKind.P1_SCALAR_CONDUIT),
    )
