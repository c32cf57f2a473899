"""Convergence sweeps of the manufactured case."""

import math
import time
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence

from loguru import logger

from fracflow.assembly import ModelParams
from fracflow.core.events import emit_row_done
from fracflow.elements import build_spaces
from fracflow.mesh import SubdomainLayout, build_rect_mesh
from fracflow.stepping import (
    ConduitStepInfo,
    State,
    StepConfig,
    TraditionalSolver,
    count_steps,
)
from fracflow.twogrid import Algorithm, CompositeSolution, LocalParallelSolver, TwoGridConfig

from .example1 import ManufacturedCase, example1_case
from .norms import NormKind, compute_norms, compute_piecewise_norms

# column name -> (field, norm)
ERROR_COLUMNS = {
    "uc_h1": ("u_c", NormKind.H1_SEMI),
    "pF_h1": ("p_F", NormKind.H1_SEMI),
    "pf_l2": ("p_f", NormKind.L2),
    "pf_h1": ("p_f", NormKind.H1_SEMI),
    "pm_l2": ("p_m", NormKind.L2),
    "pm_h1": ("p_m", NormKind.H1_SEMI),
}


def rate(e1: float, e2: float, h1: float, h2: float) -> Optional[float]:
    """Observed order ``log(e1/e2) / log(h1/h2)``; None when undefined."""
    if e1 <= 0 or e2 <= 0 or h1 <= 0 or h2 <= 0 or h1 == h2:
        return None
    if not (math.isfinite(e1) and math.isfinite(e2)):
        return None
    return math.log(e1 / e2) / math.log(h1 / h2)


@dataclass(frozen=True)
class ConvergenceLevel:
    """One row of a sweep: fine size, coarse size and time step."""

    h: float
    H: float
    dt: float


@dataclass
class ErrorRow:
    """Final-time errors of one sweep row.

    Attributes:
        h: Fine mesh size.
        H: Coarse mesh size (equal to ``h`` for the traditional algorithm).
        dt: Time step.
        errors: Column name -> error.
        cpu_s: Wall time of the run.
        coarse_errors: Column name -> error of the coarse march alone.
    """

    h: float
    H: float
    dt: float
    errors: Dict[str, float]
    cpu_s: float = 0.0
    coarse_errors: Dict[str, float] = field(default_factory=dict)


@dataclass
class ErrorTable:
    """Rows ordered by decreasing ``h`` with rates between consecutive rows."""

    rows: List[ErrorRow] = field(default_factory=list)
    algorithm: Algorithm = Algorithm.TRADITIONAL

    def rates(self, column: str) -> List[Optional[float]]:
        out: List[Optional[float]] = [None]
        for a, b in zip(self.rows, self.rows[1:]):
            out.append(rate(a.errors[column], b.errors[column], a.h, b.h))
        return out[: len(self.rows)]


def state_errors(state: State, case: ManufacturedCase, t: float) -> Dict[str, float]:
    return {
        column: compute_norms(getattr(state, name), case.exact[name], t, which)
        for column, (name, which) in ERROR_COLUMNS.items()
    }


def composite_errors(
    composite: CompositeSolution, case: ManufacturedCase, t: float
) -> Dict[str, float]:
    return {
        column: compute_piecewise_norms(composite, name, case.exact[name], t, which)
        for column, (name, which) in ERROR_COLUMNS.items()
    }


@dataclass(frozen=True, eq=False)
class Simulation:
    """Final fields of one manufactured run.

    Attributes:
        state: Fine-mesh state (the composite's representative for the local
            parallel method).
        wall_s: Wall time of setup and marching.
        history: Conduit step metadata of the (coarse) march.
        coarse: Final coarse state of the local parallel method.
        composite: Final composite solution of the local parallel method.
    """

    state: State
    wall_s: float
    history: List[ConduitStepInfo]
    coarse: Optional[State] = None
    composite: Optional[CompositeSolution] = None


def simulate(
    level: ConvergenceLevel,
    case: ManufacturedCase,
    algorithm: Algorithm,
    step: StepConfig,
    layout: SubdomainLayout,
    T: float = 1.0,
) -> Simulation:
    """March the manufactured case to ``T`` with ``algorithm`` at one level."""
    n_steps = count_steps(T, level.dt)
    problem = case.problem()
    step_cfg = replace(step, dt=level.dt)
    start = time.perf_counter()
    if algorithm is Algorithm.TRADITIONAL:
        mesh = build_rect_mesh(case.domain, level.h)
        solver = TraditionalSolver(build_spaces(mesh), problem, step_cfg)
        state = solver.march(solver.initial_state(), n_steps)
        return Simulation(state, time.perf_counter() - start, solver.history)

    cfg = TwoGridConfig(H=level.H, h=level.h, layout=layout, step=step_cfg, algorithm=algorithm)
    coarse_mesh = build_rect_mesh(case.domain, level.H)
    lp = LocalParallelSolver(coarse_mesh, problem, cfg)
    coarse, _, composite = lp.march(n_steps)
    wall = time.perf_counter() - start
    return Simulation(
        composite.to_state(), wall, lp.coarse.history, coarse=coarse, composite=composite
    )


def run_level(
    level: ConvergenceLevel,
    case: ManufacturedCase,
    algorithm: Algorithm,
    step: StepConfig,
    layout: SubdomainLayout,
    T: float = 1.0,
) -> ErrorRow:
    """Run one row to ``T`` and measure the final-time errors."""
    sim = simulate(level, case, algorithm, step, layout, T)
    if sim.composite is None:
        errors = state_errors(sim.state, case, sim.state.t)
        return ErrorRow(h=level.h, H=level.h, dt=level.dt, errors=errors, cpu_s=sim.wall_s)
    return ErrorRow(
        h=level.h,
        H=level.H,
        dt=level.dt,
        errors=composite_errors(sim.composite, case, sim.composite.t),
        cpu_s=sim.wall_s,
        coarse_errors=state_errors(sim.coarse, case, sim.coarse.t),
    )


def convergence_sweep(
    levels: Sequence[ConvergenceLevel],
    algorithm: Algorithm = Algorithm.TRADITIONAL,
    params: ModelParams = ModelParams(),
    step: Optional[StepConfig] = None,
    layout: Optional[SubdomainLayout] = None,
    T: float = 1.0,
) -> ErrorTable:
    """Run every level with ``algorithm`` and collect final-time errors.

    Args:
        levels: Rows ordered by decreasing ``h``.
        algorithm: Traditional stepping or the local parallel method.
        params: Model coefficients.
        step: Picard and threading settings; ``dt`` is taken from each level.
        layout: Subdomain layout for the local parallel method.
        T: Final time.
    """
    hs = [lv.h for lv in levels]
    if any(a <= b for a, b in zip(hs, hs[1:])):
        raise ValueError(f"Levels must be ordered by decreasing h, got {hs}")
    step = step or StepConfig()
    layout = layout or SubdomainLayout()
    case = example1_case(params, convection=step.convection)

    table = ErrorTable(algorithm=algorithm)
    for level in levels:
        logger.info(
            f"Convergence row h={level.h:g} H={level.H:g} dt={level.dt:g} ({algorithm.value})"
        )
        row = run_level(level, case, algorithm, step, layout, T)
        table.rows.append(row)
        emit_row_done(f"h={level.h:g}", dict(row.errors, cpu_s=row.cpu_s))
    return table
