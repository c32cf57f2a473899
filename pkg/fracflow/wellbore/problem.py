"""Mesh, edge classification and boundary data of the wellbore scenario."""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from fracflow.assembly import ModelParams
from fracflow.errors import GeometryMisaligned
from fracflow.mesh import EdgeTag, Mesh, Rect, build_embedded_mesh
from fracflow.stepping import Problem, constant

from .config import WellboreConfig

SNAP_TOL = 1e-9


def snap(value: float, origin: float, H: float) -> float:
    """Nearest line ``origin + k H``."""
    return origin + round((value - origin) / H) * H


def snap_geometry(cfg: WellboreConfig) -> Tuple[Rect, Tuple[float, float]]:
    """Conduit rectangle and outlet span moved onto coarse mesh lines.

    Raises:
        GeometryMisaligned: The snapped conduit or outlet collapses, or the
            conduit touches the outer boundary.
    """
    ox0, oy0, ox1, oy1 = cfg.outer
    for length in (ox1 - ox0, oy1 - oy0):
        k = length / cfg.H
        if abs(k - round(k)) > SNAP_TOL * k:
            raise GeometryMisaligned(f"H={cfg.H:g} does not tile the outer box {cfg.outer}")
    x0, y0, x1, y1 = cfg.conduit
    conduit = (
        snap(x0, ox0, cfg.H),
        snap(y0, oy0, cfg.H),
        snap(x1, ox0, cfg.H),
        snap(y1, oy0, cfg.H),
    )
    if not (ox0 < conduit[0] < conduit[2] < ox1 and oy0 < conduit[1] < conduit[3] < oy1):
        raise GeometryMisaligned(f"Snapped conduit {conduit} is degenerate or touches the boundary")
    outlet = (
        max(conduit[1], snap(cfg.outlet[0], oy0, cfg.H)),
        min(conduit[3], snap(cfg.outlet[1], oy0, cfg.H)),
    )
    if outlet[1] - outlet[0] < SNAP_TOL:
        raise GeometryMisaligned(f"Outlet {cfg.outlet} vanishes after snapping to H={cfg.H:g}")
    if conduit != tuple(cfg.conduit):
        logger.info(f"Snapped conduit {cfg.conduit} -> {tuple(round(v, 6) for v in conduit)}")
    return conduit, outlet


def edge_classifier(conduit: Rect, outlet: Tuple[float, float], interface_sides: Tuple[str, ...]):
    """Tagger for conduit boundary edges: INTERFACE, OUTLET on the right span, else CASED."""
    x0, y0, x1, y1 = conduit
    tol = SNAP_TOL * max(1.0, abs(x1), abs(y1))

    def classify(mid: np.ndarray, conduit_cells: np.ndarray) -> np.ndarray:
        mx, my = mid[:, 0], mid[:, 1]
        side = {
            "left": np.abs(mx - x0) < tol,
            "right": np.abs(mx - x1) < tol,
            "bottom": np.abs(my - y0) < tol,
            "top": np.abs(my - y1) < tol,
        }
        tags = np.full(mid.shape[0], int(EdgeTag.CASED), dtype=np.int8)
        for name in interface_sides:
            tags[side[name]] = int(EdgeTag.INTERFACE)
        on_outlet = side["right"] & (my > outlet[0]) & (my < outlet[1])
        tags[on_outlet] = int(EdgeTag.OUTLET)
        return tags

    return classify


@dataclass(frozen=True, eq=False)
class WellboreSetup:
    """Coarse mesh and stepping data of one wellbore run."""

    mesh: Mesh
    problem: Problem
    conduit: Rect
    outlet: Tuple[float, float]


def build_wellbore_problem(
    cfg: WellboreConfig, h: float, params: Optional[ModelParams] = None
) -> WellboreSetup:
    """Mesh at size ``h`` and the zero-initial, constant-inflow problem.

    Args:
        cfg: Scenario configuration.
        h: Mesh size; a divisor of ``cfg.H`` so the snapped geometry is aligned.
        params: Override of ``cfg.params`` (used by the permeability sweep).
    """
    conduit, outlet = snap_geometry(cfg)
    mesh = build_embedded_mesh(
        cfg.outer, conduit, h, edge_classifier(conduit, outlet, cfg.interface_sides)
    )
    for tag in (EdgeTag.INTERFACE, EdgeTag.OUTLET):
        if mesh.edges_with_tag(tag).size == 0:
            raise GeometryMisaligned(f"No {tag.name} edges at h={h:g}")
    params = params or cfg.params
    problem = Problem(
        name="wellbore",
        params=params,
        p_F_bc=constant(cfg.p_F_in),
        p_f_bc=constant(cfg.p_f_in),
        p_m_bc=constant(cfg.p_m_in),
    )
    counts = {tag.name: int(mesh.edges_with_tag(tag).size) for tag in EdgeTag}
    logger.info(f"Wellbore mesh h={h:g}: {mesh.n_cells} cells, edges {counts}")
    return WellboreSetup(mesh=mesh, problem=problem, conduit=conduit, outlet=outlet)
