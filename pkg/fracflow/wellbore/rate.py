"""Production rate at the wellbore outlet and the macrofracture permeability sweep."""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.integrate import trapezoid

from fracflow.assembly import FieldVector, edge_geometry
from fracflow.core.events import emit_row_done, emit_run_end, emit_run_start
from fracflow.elements import EDGE_POINTS, EDGE_WEIGHTS, build_spaces
from fracflow.errors import EmptyOutlet
from fracflow.mesh import EdgeTag, Mesh
from fracflow.stepping import ConduitStepInfo, State, StepConfig, TraditionalSolver, count_steps
from fracflow.twogrid import Algorithm, CompositeSolution, LocalParallelSolver, TwoGridConfig

from .config import WellboreConfig
from .problem import build_wellbore_problem


def _outlet_edges(mesh: Mesh, edge_ids: Optional[np.ndarray]) -> np.ndarray:
    if edge_ids is None:
        edge_ids = mesh.edges_with_tag(EdgeTag.OUTLET)
    edge_ids = np.asarray(edge_ids, dtype=np.int64)
    if edge_ids.size == 0:
        raise EmptyOutlet("No outlet edges to integrate the production rate over")
    return edge_ids


def _vertex_velocity(u_c: FieldVector, vertices: np.ndarray) -> np.ndarray:
    return u_c.vertex_values()[u_c.dofmap.vertex_index[vertices]]


def production_rate(u_c: FieldVector, edge_ids: Optional[np.ndarray] = None) -> float:
    """``Q = int_out u_c . n ds`` with two Gauss points per edge.

    Bubbles vanish on edges, so only vertex values enter.

    Args:
        u_c: Conduit velocity.
        edge_ids: Outlet edges; every OUTLET edge of the mesh when None.

    Raises:
        EmptyOutlet: No edges to integrate over.
    """
    mesh = u_c.dofmap.mesh
    geo = edge_geometry(mesh, _outlet_edges(mesh, edge_ids))
    ua = _vertex_velocity(u_c, geo.a)
    ub = _vertex_velocity(u_c, geo.b)
    flux = 0.0
    for s, w in zip(EDGE_POINTS, EDGE_WEIGHTS):
        u = (1.0 - s) * ua + s * ub
        flux += float(np.sum(w * geo.length * np.einsum("ed,ed->e", u, geo.normal)))
    return flux


def production_rate_trapezoid(u_c: FieldVector, edge_ids: Optional[np.ndarray] = None) -> float:
    """Same flux as one trapezoid rule along a straight outlet."""
    mesh = u_c.dofmap.mesh
    geo = edge_geometry(mesh, _outlet_edges(mesh, edge_ids))
    normal = geo.normal[0]
    tangent = geo.tangent[0]
    vertices = np.unique(np.concatenate([geo.a, geo.b]))
    arc = mesh.vertices[vertices] @ tangent
    order = np.argsort(arc)
    density = _vertex_velocity(u_c, vertices[order]) @ normal
    return float(trapezoid(density, arc[order]))


@dataclass(frozen=True)
class RatePoint:
    """One simulation of the sweep."""

    k_F: float
    Q: float
    wall_s: float


@dataclass(frozen=True)
class RateCurve:
    """Production rate against macrofracture permeability.

    Attributes:
        points: One entry per permeability, ``k_F`` strictly increasing.
        algorithm: Algorithm that produced the rates.
    """

    points: Tuple[RatePoint, ...]
    algorithm: Algorithm

    def __post_init__(self) -> None:
        k = [p.k_F for p in self.points]
        if any(b <= a for a, b in zip(k, k[1:])):
            raise ValueError(f"k_F must be strictly increasing, got {k}")

    @property
    def k_F(self) -> List[float]:
        return [p.k_F for p in self.points]

    @property
    def Q(self) -> List[float]:
        return [p.Q for p in self.points]

    def is_increasing(self) -> bool:
        q = self.Q
        return all(b > a for a, b in zip(q, q[1:]))


@dataclass(frozen=True, eq=False)
class WellboreRun:
    """Final fields and outlet rate of one wellbore simulation."""

    k_F: float
    algorithm: Algorithm
    state: State
    Q: float
    wall_s: float
    history: List[ConduitStepInfo] = field(default_factory=list)
    composite: Optional[CompositeSolution] = None


def wellbore_step_config(cfg: WellboreConfig, workers: int = 1) -> StepConfig:
    return StepConfig(dt=cfg.dt, convection=cfg.convection, workers=workers)


def run_wellbore(
    cfg: WellboreConfig,
    k_F: Optional[float] = None,
    algorithm: Algorithm = Algorithm.TRADITIONAL,
    workers: int = 1,
) -> WellboreRun:
    """March the wellbore scenario to ``cfg.T`` and measure the outlet rate."""
    params = cfg.params if k_F is None else cfg.params.model_copy(update={"k_F": k_F})
    step = wellbore_step_config(cfg, workers)
    n_steps = count_steps(cfg.T, cfg.dt)
    label = f"wellbore k_F={params.k_F:g}"
    emit_run_start(label, algorithm.value, n_steps, cfg.h)
    start = time.perf_counter()

    composite = None
    if algorithm is Algorithm.TRADITIONAL:
        setup = build_wellbore_problem(cfg, cfg.h, params)
        solver = TraditionalSolver(build_spaces(setup.mesh), setup.problem, step)
        state = solver.march(solver.initial_state(), n_steps)
        history = solver.history
    else:
        setup = build_wellbore_problem(cfg, cfg.H, params)
        twogrid = TwoGridConfig(H=cfg.H, h=cfg.h, layout=cfg.layout, step=step, algorithm=algorithm)
        lp = LocalParallelSolver(setup.mesh, setup.problem, twogrid)
        _, _, composite = lp.march(n_steps)
        history = lp.coarse.history
        state = composite.to_state()

    wall = time.perf_counter() - start
    Q = production_rate(state.u_c)
    logger.info(f"{label} ({algorithm.value}): Q={Q:.6g} after {n_steps} steps, {wall:.2f}s")
    emit_run_end(label, wall)
    return WellboreRun(
        k_F=params.k_F,
        algorithm=algorithm,
        state=state,
        Q=Q,
        wall_s=wall,
        history=history,
        composite=composite,
    )


def sweep_kF(
    cfg: WellboreConfig,
    values: Optional[Iterable[float]] = None,
    algorithm: Algorithm = Algorithm.TRADITIONAL,
    workers: int = 1,
    on_run: Optional[Callable[[WellboreRun], None]] = None,
) -> RateCurve:
    """Final-time production rate for each macrofracture permeability.

    Entries are independent; with ``workers > 1`` they run concurrently and
    each simulation itself stays serial.

    Args:
        cfg: Scenario configuration.
        values: Positive, strictly increasing permeabilities; ``cfg.k_F_values``
            when None.
        algorithm: Time marching algorithm.
        workers: Number of simultaneous simulations.
        on_run: Called with every finished run, in k_F order.
    """
    k_values: Sequence[float] = tuple(cfg.k_F_values if values is None else values)
    if not k_values or min(k_values) <= 0:
        raise ValueError(f"k_F values must be positive and nonempty, got {list(k_values)}")
    if any(b <= a for a, b in zip(k_values, k_values[1:])):
        raise ValueError(f"k_F values must be strictly increasing, got {list(k_values)}")

    logger.info(f"Sweeping {len(k_values)} k_F values with {algorithm.value}")
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            futures = [pool.submit(run_wellbore, cfg, k, algorithm) for k in k_values]
            runs = [f.result() for f in futures]
    else:
        runs = [run_wellbore(cfg, k, algorithm) for k in k_values]

    points = []
    for run in runs:
        if on_run is not None:
            on_run(run)
        points.append(RatePoint(k_F=run.k_F, Q=run.Q, wall_s=run.wall_s))
        emit_row_done(f"k_F={run.k_F:g}", {"Q": run.Q, "wall_s": run.wall_s})
    return RateCurve(points=tuple(points), algorithm=algorithm)

