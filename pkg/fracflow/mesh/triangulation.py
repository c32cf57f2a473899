"""Structured triangulations with region and edge tags, and red refinement."""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from loguru import logger

from fracflow.errors import NonDivisibleStep

from .geometry import GEOMETRY_TOL, EdgeTag, Rect, RectDomain, Region

# Cell-local edges (0,1), (1,2), (2,0)
LOCAL_EDGES = np.array([[0, 1], [1, 2], [2, 0]])

InterfaceTagger = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class Mesh:
    """Conforming triangulation of the porous and conduit regions.

    Only boundary and region-interface edges are stored. For each stored edge
    the adjacent porous and conduit cells are recorded (``-1`` when absent).

    Attributes:
        vertices: ``(n_vertices, 2)`` coordinates.
        triangles: ``(n_cells, 3)`` CCW vertex indices.
        cell_region: ``(n_cells,)`` Region value per cell.
        edges: ``(n_edges, 2)`` vertex pairs, smaller index first.
        edge_tag: ``(n_edges,)`` EdgeTag value per edge.
        edge_porous_cell: Porous cell adjacent to each edge or -1.
        edge_conduit_cell: Conduit cell adjacent to each edge or -1.
        h: Nominal mesh size.
        parent: Per-cell index into ``parent_mesh`` after refinement.
        parent_mesh: The coarse mesh this one was refined from.
        dimension: Spatial dimension.
    """

    vertices: np.ndarray
    triangles: np.ndarray
    cell_region: np.ndarray
    edges: np.ndarray
    edge_tag: np.ndarray
    edge_porous_cell: np.ndarray
    edge_conduit_cell: np.ndarray
    h: float
    parent: Optional[np.ndarray] = None
    parent_mesh: Optional["Mesh"] = field(default=None, repr=False)
    dimension: int = 2

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_cells(self) -> int:
        return int(self.triangles.shape[0])

    def region_cells(self, region: Region) -> np.ndarray:
        """Indices of cells tagged ``region``, ascending."""
        return np.flatnonzero(self.cell_region == int(region))

    def edges_with_tag(self, tag: EdgeTag) -> np.ndarray:
        """Indices into ``edges`` carrying ``tag``."""
        return np.flatnonzero(self.edge_tag == int(tag))

    def cell_areas(self) -> np.ndarray:
        p = self.vertices[self.triangles]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    def barycenters(self) -> np.ndarray:
        return self.vertices[self.triangles].mean(axis=1)

    def edge_midpoints(self, edge_ids: Optional[np.ndarray] = None) -> np.ndarray:
        e = self.edges if edge_ids is None else self.edges[edge_ids]
        return 0.5 * (self.vertices[e[:, 0]] + self.vertices[e[:, 1]])

    def region_bbox(self, region: Region) -> Rect:
        cells = self.region_cells(region)
        pts = self.vertices[np.unique(self.triangles[cells])]
        x0, y0 = pts.min(axis=0)
        x1, y1 = pts.max(axis=0)
        return (float(x0), float(y0), float(x1), float(y1))

    def region_area(self, region: Region) -> float:
        return float(self.cell_areas()[self.region_cells(region)].sum())


def _divisions(length: float, h: float, what: str) -> int:
    n = length / h
    k = int(round(n))
    if k < 1 or abs(n - k) > GEOMETRY_TOL * max(1.0, n):
        raise NonDivisibleStep(f"h={h!r} does not tile {what} of length {length!r}")
    return k


def _structured_grid(box: Rect, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Vertices and CCW triangles of a box, diagonal lower-left to upper-right."""
    x0, y0, x1, y1 = box
    nx = _divisions(x1 - x0, h, "box width")
    ny = _divisions(y1 - y0, h, "box height")
    xs = np.linspace(x0, x1, nx + 1)
    ys = np.linspace(y0, y1, ny + 1)
    gx, gy = np.meshgrid(xs, ys)
    vertices = np.column_stack([gx.ravel(), gy.ravel()])

    ii, jj = np.meshgrid(np.arange(nx), np.arange(ny))
    v00 = (jj * (nx + 1) + ii).ravel()
    v10 = v00 + 1
    v01 = v00 + nx + 1
    v11 = v01 + 1
    lower = np.column_stack([v00, v10, v11])
    upper = np.column_stack([v00, v11, v01])
    triangles = np.stack([lower, upper], axis=1).reshape(-1, 3)
    return vertices, triangles


def _all_interface(midpoints: np.ndarray, conduit_cells: np.ndarray) -> np.ndarray:
    return np.full(midpoints.shape[0], int(EdgeTag.INTERFACE), dtype=np.int8)


def _tag_edges(
    vertices: np.ndarray,
    triangles: np.ndarray,
    cell_region: np.ndarray,
    interface_tagger: InterfaceTagger,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Find boundary and region-interface edges and tag them."""
    n_vertices = vertices.shape[0]
    n_cells = triangles.shape[0]
    pairs = np.sort(triangles[:, LOCAL_EDGES].reshape(-1, 2), axis=1)
    cell_of = np.repeat(np.arange(n_cells), 3)
    keys = pairs[:, 0].astype(np.int64) * n_vertices + pairs[:, 1]

    ukeys, inverse, counts = np.unique(keys, return_inverse=True, return_counts=True)
    order = np.argsort(inverse, kind="stable")
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    first = cell_of[order[starts]]
    second_pos = np.minimum(starts + 1, order.size - 1)
    second = np.where(counts == 2, cell_of[order[second_pos]], -1)

    boundary = counts == 1
    crossing = (counts == 2) & (cell_region[first] != cell_region[np.maximum(second, 0)])
    keep = boundary | crossing

    edges = np.column_stack([ukeys[keep] // n_vertices, ukeys[keep] % n_vertices])
    c0 = first[keep]
    c1 = second[keep]
    porous = np.full(edges.shape[0], -1, dtype=np.int64)
    conduit = np.full(edges.shape[0], -1, dtype=np.int64)
    for cells in (c0, c1):
        valid = cells >= 0
        is_p = valid & (cell_region[np.maximum(cells, 0)] == int(Region.POROUS))
        is_c = valid & (cell_region[np.maximum(cells, 0)] == int(Region.CONDUIT))
        porous[is_p] = cells[is_p]
        conduit[is_c] = cells[is_c]

    tags = np.empty(edges.shape[0], dtype=np.int8)
    outer = boundary[keep]
    tags[outer & (porous >= 0)] = int(EdgeTag.OUTER_P)
    tags[outer & (conduit >= 0)] = int(EdgeTag.OUTER_C)
    inner = ~outer
    if inner.any():
        mids = 0.5 * (vertices[edges[inner, 0]] + vertices[edges[inner, 1]])
        tags[inner] = interface_tagger(mids, conduit[inner])
    return edges, tags, porous, conduit


def _assemble_mesh(
    vertices: np.ndarray,
    triangles: np.ndarray,
    region_of: Callable[[np.ndarray], np.ndarray],
    h: float,
    interface_tagger: InterfaceTagger = _all_interface,
) -> Mesh:
    bary = vertices[triangles].mean(axis=1)
    cell_region = region_of(bary).astype(np.int8)
    edges, tags, porous, conduit = _tag_edges(vertices, triangles, cell_region, interface_tagger)
    return Mesh(
        vertices=vertices,
        triangles=triangles,
        cell_region=cell_region,
        edges=edges,
        edge_tag=tags,
        edge_porous_cell=porous,
        edge_conduit_cell=conduit,
        h=float(h),
    )


def _inside(points: np.ndarray, rect: Rect) -> np.ndarray:
    x0, y0, x1, y1 = rect
    return (points[:, 0] > x0) & (points[:, 0] < x1) & (points[:, 1] > y0) & (points[:, 1] < y1)


def build_rect_mesh(domain: RectDomain, h: float) -> Mesh:
    """Structured mesh of a porous rectangle and a conduit rectangle.

    Args:
        domain: Two rectangles sharing a full edge.
        h: Mesh size; must tile every rectangle side.

    Returns:
        Tagged mesh. Edges on the shared side are INTERFACE.
    """
    for name, rect in (("porous", domain.porous_rect), ("conduit", domain.conduit_rect)):
        _divisions(rect[2] - rect[0], h, f"{name} width")
        _divisions(rect[3] - rect[1], h, f"{name} height")
    vertices, triangles = _structured_grid(domain.bounding_box, h)

    def region_of(bary: np.ndarray) -> np.ndarray:
        return np.where(_inside(bary, domain.conduit_rect), Region.CONDUIT, Region.POROUS)

    mesh = _assemble_mesh(vertices, triangles, region_of, h)
    logger.debug(
        f"Built rect mesh h={h:g}: {mesh.n_vertices} vertices, {mesh.n_cells} cells, "
        f"{len(mesh.edges_with_tag(EdgeTag.INTERFACE))} interface edges"
    )
    return mesh


def build_region_mesh(rect: Rect, h: float, region: Region = Region.POROUS) -> Mesh:
    """Structured mesh of a single rectangle, all cells in ``region``."""
    vertices, triangles = _structured_grid(rect, h)
    return _assemble_mesh(
        vertices, triangles, lambda b: np.full(b.shape[0], int(region)), h
    )


def build_embedded_mesh(
    outer: Rect,
    inner: Rect,
    h: float,
    interface_tagger: InterfaceTagger = _all_interface,
) -> Mesh:
    """Structured mesh of ``outer`` with the cells inside ``inner`` tagged CONDUIT.

    Args:
        outer: Outer box, all of whose boundary is OUTER_P.
        inner: Conduit rectangle; its sides must lie on mesh lines.
        h: Mesh size.
        interface_tagger: Maps midpoints of conduit-boundary edges (and their
            conduit cells) to INTERFACE, CASED or OUTLET tags.
    """
    for k, what in ((0, "inner x0"), (1, "inner y0"), (2, "inner x1"), (3, "inner y1")):
        offset = inner[k] - outer[k % 2]
        if abs(offset) > GEOMETRY_TOL:
            _divisions(offset, h, what)
    vertices, triangles = _structured_grid(outer, h)

    def region_of(bary: np.ndarray) -> np.ndarray:
        return np.where(_inside(bary, inner), Region.CONDUIT, Region.POROUS)

    return _assemble_mesh(vertices, triangles, region_of, h, interface_tagger)


def _refine_once(mesh: Mesh) -> tuple[Mesh, np.ndarray]:
    n_vertices = mesh.n_vertices
    tri = mesh.triangles
    pairs = np.sort(tri[:, LOCAL_EDGES], axis=2)  # (n_cells, 3, 2)
    keys = pairs[..., 0].astype(np.int64) * n_vertices + pairs[..., 1]
    ukeys, inverse = np.unique(keys.ravel(), return_inverse=True)
    mid = n_vertices + inverse.reshape(-1, 3)  # midpoint of edges ab, bc, ca

    a = ukeys // n_vertices
    b = ukeys % n_vertices
    new_vertices = np.vstack([mesh.vertices, 0.5 * (mesh.vertices[a] + mesh.vertices[b])])

    m_ab, m_bc, m_ca = mid[:, 0], mid[:, 1], mid[:, 2]
    va, vb, vc = tri[:, 0], tri[:, 1], tri[:, 2]
    children = np.stack(
        [
            np.column_stack([va, m_ab, m_ca]),
            np.column_stack([m_ab, vb, m_bc]),
            np.column_stack([m_ca, m_bc, vc]),
            np.column_stack([m_ab, m_bc, m_ca]),
        ],
        axis=1,
    ).reshape(-1, 3)
    parent = np.repeat(np.arange(mesh.n_cells), 4)

    # Split stored edges and find the child cell touching each half
    e = mesh.edges
    ekeys = e[:, 0].astype(np.int64) * n_vertices + e[:, 1]
    emid = n_vertices + np.searchsorted(ukeys, ekeys)

    def child_cells(parent_cells: np.ndarray, end: np.ndarray) -> np.ndarray:
        out = np.full(parent_cells.shape, -1, dtype=np.int64)
        valid = parent_cells >= 0
        pc = parent_cells[valid]
        local = np.argmax(tri[pc] == end[valid][:, None], axis=1)
        out[valid] = 4 * pc + local
        return out

    halves = []
    for end in (e[:, 0], e[:, 1]):
        pairs_new = np.sort(np.column_stack([end, emid]), axis=1)
        halves.append(
            (
                pairs_new,
                mesh.edge_tag,
                child_cells(mesh.edge_porous_cell, end),
                child_cells(mesh.edge_conduit_cell, end),
            )
        )
    fine = Mesh(
        vertices=new_vertices,
        triangles=children,
        cell_region=np.repeat(mesh.cell_region, 4),
        edges=np.vstack([halves[0][0], halves[1][0]]),
        edge_tag=np.concatenate([halves[0][1], halves[1][1]]),
        edge_porous_cell=np.concatenate([halves[0][2], halves[1][2]]),
        edge_conduit_cell=np.concatenate([halves[0][3], halves[1][3]]),
        h=mesh.h / 2.0,
    )
    return fine, parent


def refine_uniform(mesh: Mesh, levels: int) -> Mesh:
    """Red-refine every triangle into four congruent children, ``levels`` times.

    Coarse vertices keep their indices. ``parent`` maps each fine cell to the
    cell of ``mesh`` containing it and ``parent_mesh`` is ``mesh`` itself.
    """
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    current = mesh
    parent = np.arange(mesh.n_cells)
    for _ in range(levels):
        current, step_parent = _refine_once(current)
        parent = parent[step_parent]
    fine = Mesh(
        vertices=current.vertices,
        triangles=current.triangles,
        cell_region=current.cell_region,
        edges=current.edges,
        edge_tag=current.edge_tag,
        edge_porous_cell=current.edge_porous_cell,
        edge_conduit_cell=current.edge_conduit_cell,
        h=current.h,
        parent=parent,
        parent_mesh=mesh,
    )
    logger.debug(f"Refined {mesh.n_cells} -> {fine.n_cells} cells ({levels} levels)")
    return fine


def refinement_levels(H: float, h: float) -> int:
    """Number of halvings taking ``H`` to ``h`` (0 when equal)."""
    ratio = H / h
    levels = int(round(np.log2(ratio)))
    if levels < 0 or abs(ratio - 2.0**levels) > 1e-9 * ratio:
        raise NonDivisibleStep(f"H/h = {ratio!r} is not a power of two")
    return levels
