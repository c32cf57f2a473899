"""Coarse marching, parallel local corrections and the composite solution."""

from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from fracflow.assembly import FieldVector
from fracflow.core.events import emit_step_end, emit_subdomain_solved
from fracflow.elements import DofMap, Spaces, build_spaces
from fracflow.errors import MissingCorrection
from fracflow.mesh import Decomposition, Mesh, Region, partition_subdomains, refine_uniform
from fracflow.stepping import FIELD_NAMES, POROUS_FIELDS, Problem, State, TraditionalSolver

from .config import TwoGridConfig
from .local import (
    LocalPorousProblem,
    LocalProblem,
    build_local_conduit,
    build_local_porous,
    correction_norm,
    local_correction_conduit,
    local_correction_porous,
)
from .prolong import Prolongator

CONDUIT_FIELDS = ("u_c", "p")


@dataclass(frozen=True, eq=False)
class CorrectionSet:
    """Per-subdomain corrections at one time level.

    Porous subdomains carry ``p_F``, ``p_f``, ``p_m`` (the corrections e_F,
    e_f, e_m); conduit subdomains carry ``u_c`` and ``p`` (e_c and xi). Each
    vector is full length and vanishes off the extended subdomain.
    """

    t: float
    fields: Dict[int, Dict[str, np.ndarray]]
    norms: Dict[int, float] = field(default_factory=dict)

    @classmethod
    def zeros(cls, decomposition: Decomposition, spaces: Spaces, t: float = 0.0) -> "CorrectionSet":
        fields = {}
        for sub in decomposition.subdomains:
            if sub.region == Region.POROUS:
                fields[sub.index] = {n: np.zeros(spaces.porous.n_dofs) for n in POROUS_FIELDS}
            else:
                fields[sub.index] = {
                    "u_c": np.zeros(spaces.velocity.n_dofs),
                    "p": np.zeros(spaces.pressure.n_dofs),
                }
        return cls(t=t, fields=fields, norms={i: 0.0 for i in fields})

    def get(self, index: int) -> Dict[str, np.ndarray]:
        if index not in self.fields:
            raise MissingCorrection(f"No correction for subdomain {index} at t={self.t:g}")
        return self.fields[index]


@dataclass(frozen=True, eq=False)
class CompositeSolution:
    """Prolonged coarse solution plus owner corrections, stored cellwise.

    Attributes:
        coarse: Coarse state.
        prolonged: Coarse state interpolated to the fine mesh.
        corrections: Corrections used on each owned cell.
        decomposition: Fine subdomains and the cell owner map.
        cell_values: Field name -> ``(n_region_cells, local_size)`` coefficients
            on each fine cell of the field's region.
    """

    coarse: State
    prolonged: State
    corrections: CorrectionSet
    decomposition: Decomposition
    cell_values: Dict[str, np.ndarray]

    @property
    def t(self) -> float:
        return self.prolonged.t

    def dofmap(self, name: str) -> DofMap:
        return getattr(self.prolonged, name).dofmap

    def to_state(self) -> State:
        """Continuous fine fields taking each dof from its lowest-numbered cell."""
        fields = {}
        for name in FIELD_NAMES:
            dofmap = self.dofmap(name)
            flat = dofmap.cell_dofs.ravel()
            dofs, first = np.unique(flat, return_index=True)
            values = np.zeros(dofmap.n_dofs)
            values[dofs] = self.cell_values[name].ravel()[first]
            fields[name] = FieldVector(dofmap, values, self.t)
        return State(t=self.t, **fields)


def correct(
    coarse: State,
    prolonged: State,
    corrections: CorrectionSet,
    decomposition: Decomposition,
) -> CompositeSolution:
    """On each owned cell, prolonged coarse values plus the owner's correction."""
    cell_values = {}
    for name in FIELD_NAMES:
        dofmap = getattr(prolonged, name).dofmap
        base = getattr(prolonged, name).coefficients[dofmap.cell_dofs]
        owner = decomposition.owner[dofmap.cells]
        for index in np.unique(owner):
            if index < 0:
                raise MissingCorrection(f"{dofmap.region.name} cells without an owning subdomain")
            rows = np.flatnonzero(owner == index)
            base[rows] += corrections.get(int(index))[name][dofmap.cell_dofs[rows]]
        cell_values[name] = base
    return CompositeSolution(
        coarse=coarse,
        prolonged=prolonged,
        corrections=corrections,
        decomposition=decomposition,
        cell_values=cell_values,
    )


StepCallback = Callable[[int, CompositeSolution], None]


class LocalParallelSolver:
    """Two-grid local parallel marching.

    Builds the fine mesh by uniform refinement of ``coarse_mesh`` (or reuses
    it when ``H == h``), partitions it, and factorizes every local problem
    once.
    """

    def __init__(self, coarse_mesh: Mesh, problem: Problem, cfg: TwoGridConfig) -> None:
        self.problem = problem
        self.cfg = cfg
        fine_mesh = coarse_mesh if cfg.levels == 0 else refine_uniform(coarse_mesh, cfg.levels)
        self.coarse_spaces = build_spaces(coarse_mesh)
        self.fine_spaces = build_spaces(fine_mesh)
        self.coarse = TraditionalSolver(self.coarse_spaces, problem, cfg.step)
        self.decomposition = partition_subdomains(fine_mesh, cfg.layout)
        self.prolongators = {
            "porous": Prolongator(self.coarse_spaces.porous, self.fine_spaces.porous),
            "velocity": Prolongator(self.coarse_spaces.velocity, self.fine_spaces.velocity),
            "pressure": Prolongator(self.coarse_spaces.pressure, self.fine_spaces.pressure),
        }
        self.local: List[LocalProblem] = []
        for sub in self.decomposition.subdomains:
            build = build_local_porous if sub.region == Region.POROUS else build_local_conduit
            self.local.append(build(self.fine_spaces, sub, problem, cfg.step))
        logger.info(
            f"Local parallel solver: H={cfg.H:g}, h={cfg.h:g}, "
            f"{len(self.local)} subdomains, overlap {cfg.layout.overlap:g}"
        )

    @property
    def fine_mesh(self) -> Mesh:
        return self.fine_spaces.mesh

    def prolong_state(self, state: State) -> State:
        P = self.prolongators
        return State(
            t=state.t,
            p_F=P["porous"](state.p_F),
            p_f=P["porous"](state.p_f),
            p_m=P["porous"](state.p_m),
            u_c=P["velocity"](state.u_c),
            p=P["pressure"](state.p),
        )

    def initial_state(self) -> Tuple[State, CorrectionSet]:
        state = self.coarse.initial_state()
        return state, CorrectionSet.zeros(self.decomposition, self.fine_spaces, state.t)

    def _solve_local(
        self,
        local: LocalProblem,
        coarse_n: Dict[str, np.ndarray],
        coarse_n1: Dict[str, np.ndarray],
        corrections_n: CorrectionSet,
        t: float,
    ) -> Dict[str, np.ndarray]:
        previous = corrections_n.get(local.subdomain.index)
        if isinstance(local, LocalPorousProblem):
            return local_correction_porous(local, coarse_n, coarse_n1, previous, self.problem, t)
        return local_correction_conduit(local, coarse_n, coarse_n1, previous, self.problem, t)

    def advance(
        self,
        state_H: State,
        corrections: CorrectionSet,
        executor: Optional[Executor] = None,
    ) -> Tuple[State, CorrectionSet, CompositeSolution]:
        """Coarse step, all local corrections, then the ordered merge."""
        prolonged_n = self.prolong_state(state_H)
        state_H1 = self.coarse.advance(state_H, executor)
        prolonged_n1 = self.prolong_state(state_H1)
        t1 = state_H1.t

        coarse_n = {n: f.coefficients for n, f in prolonged_n.fields().items()}
        coarse_n1 = {n: f.coefficients for n, f in prolonged_n1.fields().items()}
        if executor is None:
            results = [
                self._solve_local(local, coarse_n, coarse_n1, corrections, t1) for local in self.local
            ]
        else:
            futures = [
                executor.submit(self._solve_local, local, coarse_n, coarse_n1, corrections, t1)
                for local in self.local
            ]
            results = [f.result() for f in futures]

        fields: Dict[int, Dict[str, np.ndarray]] = {}
        norms: Dict[int, float] = {}
        for local, result in zip(self.local, results):
            index = local.subdomain.index
            fields[index] = result
            norms[index] = correction_norm(local, result)
            emit_subdomain_solved(index, local.subdomain.region.name.lower(), t1, norms[index])
        corrections_n1 = CorrectionSet(t=t1, fields=fields, norms=norms)
        composite = correct(state_H1, prolonged_n1, corrections_n1, self.decomposition)
        return state_H1, corrections_n1, composite

    def march(
        self,
        n_steps: int,
        callback: Optional[StepCallback] = None,
    ) -> Tuple[State, CorrectionSet, CompositeSolution]:
        """March from the initial data; returns the final coarse state, corrections and composite."""
        state, corrections = self.initial_state()
        composite = correct(
            state, self.prolong_state(state), corrections, self.decomposition
        )
        workers = self.cfg.step.workers
        executor = ThreadPoolExecutor(workers) if workers > 1 else None
        try:
            for step in range(1, n_steps + 1):
                state, corrections, composite = self.advance(state, corrections, executor)
                info = self.coarse.history[-1]
                emit_step_end(step, state.t, info.iterations, info.converged)
                if callback is not None:
                    callback(step, composite)
        finally:
            if executor is not None:
                executor.shutdown()
        return state, corrections, composite


def coarse_march(
    state_H: State,
    problem: Problem,
    cfg: TwoGridConfig,
    solver: Optional[TraditionalSolver] = None,
) -> State:
    """One partitioned step on the coarse mesh."""
    if solver is None:
        solver = TraditionalSolver(state_H.spaces, problem, cfg.step)
    return solver.advance(state_H)


def advance_local_parallel(
    state_H: State,
    corrections: CorrectionSet,
    problem: Problem,
    cfg: TwoGridConfig,
    solver: Optional[LocalParallelSolver] = None,
) -> Tuple[State, CorrectionSet, CompositeSolution]:
    """One step of the local parallel method from ``(state_H, corrections)``."""
    if solver is None:
        solver = LocalParallelSolver(state_H.mesh, problem, cfg)
    return solver.advance(state_H, corrections)
