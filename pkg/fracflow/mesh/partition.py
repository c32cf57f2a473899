"""Disjoint subdomains with overlap extensions."""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from fracflow.errors import MisalignedLayout

from .geometry import GEOMETRY_TOL, EdgeTag, Rect, Region
from .triangulation import Mesh


@dataclass(frozen=True)
class SubdomainLayout:
    """How each region is split into subdomains.

    Attributes:
        counts: ``(n_x, n_y)`` subdomains of the porous region (and of the
            conduit region unless ``conduit_counts`` is given).
        overlap: Extension length added on every artificial side.
        conduit_counts: Optional separate counts for the conduit region.
    """

    counts: Tuple[int, int] = (2, 2)
    overlap: float = 0.25
    conduit_counts: Optional[Tuple[int, int]] = None

    def __post_init__(self) -> None:
        for c in (self.counts, self.conduit_counts or self.counts):
            if len(c) != 2 or min(c) < 1:
                raise ValueError(f"Subdomain counts must be >= 1, got {c}")
        if self.overlap < 0:
            raise ValueError(f"Overlap must be >= 0, got {self.overlap}")

    def counts_for(self, region: Region) -> Tuple[int, int]:
        if region == Region.CONDUIT and self.conduit_counts is not None:
            return self.conduit_counts
        return self.counts


@dataclass(frozen=True, eq=False)
class Subdomain:
    """One disjoint rectangle D_j and its extension.

    Attributes:
        index: Position in the decomposition (porous first, then conduit).
        region: Region the subdomain belongs to.
        disjoint: Rectangle D_j.
        extended: Rectangle of the extended subdomain.
        cells: Region cells with barycenter in ``extended``.
        owned: Region cells with barycenter in ``disjoint``.
        interface_edges: INTERFACE edge ids whose region-side cell is in ``cells``.
    """

    index: int
    region: Region
    disjoint: Rect
    extended: Rect
    cells: np.ndarray
    owned: np.ndarray
    interface_edges: np.ndarray


@dataclass(frozen=True, eq=False)
class Decomposition:
    """All subdomains of both regions plus the cell ownership map."""

    subdomains: Tuple[Subdomain, ...]
    owner: np.ndarray

    def for_region(self, region: Region) -> List[Subdomain]:
        return [s for s in self.subdomains if s.region == region]

    @property
    def disjoint(self) -> List[Rect]:
        return [s.disjoint for s in self.subdomains]

    @property
    def extended(self) -> List[Rect]:
        return [s.extended for s in self.subdomains]

    @property
    def cell_sets(self) -> List[np.ndarray]:
        return [s.cells for s in self.subdomains]


def _on_mesh_line(value: float, origin: float, h: float) -> bool:
    k = (value - origin) / h
    return abs(k - round(k)) <= 1e-9 * max(1.0, abs(k))


def _check_aligned(rect: Rect, bbox: Rect, h: float, what: str) -> None:
    for k, v in enumerate(rect):
        if not _on_mesh_line(v, bbox[k % 2], h):
            raise MisalignedLayout(f"{what} side {v!r} of {rect} is not on a mesh line (h={h:g})")


def _in_rect(points: np.ndarray, rect: Rect) -> np.ndarray:
    x0, y0, x1, y1 = rect
    tol = GEOMETRY_TOL * max(1.0, abs(x1), abs(y1))
    return (
        (points[:, 0] >= x0 - tol)
        & (points[:, 0] <= x1 + tol)
        & (points[:, 1] >= y0 - tol)
        & (points[:, 1] <= y1 + tol)
    )


def partition_subdomains(mesh: Mesh, layout: SubdomainLayout) -> Decomposition:
    """Split each region's bounding box into a grid of subdomains.

    Extensions are clipped at the region's bounding box, so subdomains that
    touch the physical boundary are not extended past it.

    Args:
        mesh: The fine mesh.
        layout: Counts and overlap.

    Returns:
        Decomposition with porous subdomains first, each region row-major.
    """
    bary = mesh.barycenters()
    owner = np.full(mesh.n_cells, -1, dtype=np.int64)
    interface = mesh.edges_with_tag(EdgeTag.INTERFACE)
    subdomains: List[Subdomain] = []

    for region in (Region.POROUS, Region.CONDUIT):
        region_cells = mesh.region_cells(region)
        if region_cells.size == 0:
            continue
        bbox = mesh.region_bbox(region)
        nx, ny = layout.counts_for(region)
        xs = np.linspace(bbox[0], bbox[2], nx + 1)
        ys = np.linspace(bbox[1], bbox[3], ny + 1)
        side_cells = (
            mesh.edge_porous_cell[interface]
            if region == Region.POROUS
            else mesh.edge_conduit_cell[interface]
        )

        rb = bary[region_cells]
        ix = np.clip(np.searchsorted(xs, rb[:, 0]) - 1, 0, nx - 1)
        iy = np.clip(np.searchsorted(ys, rb[:, 1]) - 1, 0, ny - 1)
        local_owner = iy * nx + ix

        for j in range(ny):
            for i in range(nx):
                disjoint = (float(xs[i]), float(ys[j]), float(xs[i + 1]), float(ys[j + 1]))
                extended = (
                    max(bbox[0], disjoint[0] - layout.overlap),
                    max(bbox[1], disjoint[1] - layout.overlap),
                    min(bbox[2], disjoint[2] + layout.overlap),
                    min(bbox[3], disjoint[3] + layout.overlap),
                )
                _check_aligned(disjoint, bbox, mesh.h, "subdomain")
                _check_aligned(extended, bbox, mesh.h, "extended subdomain")

                index = len(subdomains)
                owned = region_cells[local_owner == j * nx + i]
                owner[owned] = index
                cells = region_cells[_in_rect(rb, extended)]
                edges = interface[np.isin(side_cells, cells)]
                subdomains.append(
                    Subdomain(
                        index=index,
                        region=region,
                        disjoint=disjoint,
                        extended=extended,
                        cells=cells,
                        owned=owned,
                        interface_edges=edges,
                    )
                )
                if owned.size == 0:
                    logger.warning(f"Subdomain {index} {disjoint} owns no cells")

    logger.debug(f"Partitioned mesh into {len(subdomains)} subdomains (overlap {layout.overlap:g})")
    return Decomposition(subdomains=tuple(subdomains), owner=owner)
