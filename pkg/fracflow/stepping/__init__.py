"""Backward-Euler partitioned stepping of the coupled porous/conduit system."""

from .conduit import ConduitStepInfo, ConduitSystem, picard_solve, relative_increment, step_conduit
from .config import StepConfig, default_step_config
from .porous import POROUS_FIELDS, PorousSystem, step_porous
from .problem import Problem, constant, zero_problem, zero_scalar, zero_vector
from .state import FIELD_NAMES, State, initial_state, zero_state
from .subsets import active_dofs, artificial_vertices, count_steps, local_index, restrict
from .traditional import TraditionalSolver, advance_traditional

__all__ = [
    "ConduitStepInfo",
    "ConduitSystem",
    "picard_solve",
    "relative_increment",
    "step_conduit",
    "StepConfig",
    "default_step_config",
    "POROUS_FIELDS",
    "PorousSystem",
    "step_porous",
    "Problem",
    "constant",
    "zero_problem",
    "zero_scalar",
    "zero_vector",
    "FIELD_NAMES",
    "State",
    "initial_state",
    "zero_state",
    "active_dofs",
    "artificial_vertices",
    "count_steps",
    "local_index",
    "restrict",
    "TraditionalSolver",
    "advance_traditional",
]
