"""Partitioned backward-Euler marching on a single mesh."""

from concurrent.futures import Executor, ThreadPoolExecutor
from typing import Callable, List, Optional

from loguru import logger

from fracflow.core.events import emit_step_end
from fracflow.elements import Spaces

from .conduit import ConduitStepInfo, ConduitSystem, step_conduit
from .config import StepConfig
from .porous import PorousSystem, step_porous
from .problem import Problem
from .state import State, initial_state

StepCallback = Callable[[int, State, ConduitStepInfo], None]


class TraditionalSolver:
    """Porous and conduit steps with operators factorized once per run."""

    def __init__(self, spaces: Spaces, problem: Problem, cfg: StepConfig) -> None:
        self.spaces = spaces
        self.problem = problem
        self.cfg = cfg
        self.porous = PorousSystem(spaces, problem.params, cfg.dt)
        self.conduit = ConduitSystem(
            spaces, problem.params, cfg, pin=0 if cfg.pressure_pin else None
        )
        self.history: List[ConduitStepInfo] = []

    def initial_state(self) -> State:
        return initial_state(self.spaces, self.problem)

    def advance(self, state: State, executor: Optional[Executor] = None) -> State:
        """One step; the conduit solve reads ``p_F`` at ``t_n``, not ``t_{n+1}``."""
        if executor is None:
            p_F, p_f, p_m = step_porous(state, self.problem, self.cfg, self.porous)
            u_c, p, info = step_conduit(state, self.problem, self.cfg, self.conduit)
        else:
            conduit = executor.submit(step_conduit, state, self.problem, self.cfg, self.conduit)
            p_F, p_f, p_m = step_porous(state, self.problem, self.cfg, self.porous, executor)
            u_c, p, info = conduit.result()
        self.history.append(info)
        return State(t=p_F.time, p_F=p_F, p_f=p_f, p_m=p_m, u_c=u_c, p=p)

    def march(
        self,
        state: State,
        n_steps: int,
        callback: Optional[StepCallback] = None,
    ) -> State:
        """Advance ``n_steps`` steps, using ``cfg.workers`` threads when above one."""
        logger.info(f"Marching {n_steps} steps of dt={self.cfg.dt:g} on h={self.spaces.mesh.h:g}")
        executor = ThreadPoolExecutor(self.cfg.workers) if self.cfg.workers > 1 else None
        try:
            for step in range(1, n_steps + 1):
                state = self.advance(state, executor)
                info = self.history[-1]
                emit_step_end(step, state.t, info.iterations, info.converged)
                if callback is not None:
                    callback(step, state, info)
        finally:
            if executor is not None:
                executor.shutdown()
        return state


def advance_traditional(
    state_n: State,
    problem: Problem,
    cfg: StepConfig,
    solver: Optional[TraditionalSolver] = None,
) -> State:
    """One partitioned step: porous update, then conduit update with lagged ``p_F``."""
    if solver is None:
        solver = TraditionalSolver(state_n.spaces, problem, cfg)
    return solver.advance(state_n)
