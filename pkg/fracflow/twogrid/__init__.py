"""Two-grid local parallel method: coarse marching plus local fine corrections."""

from .algorithm import (
    CompositeSolution,
    CorrectionSet,
    LocalParallelSolver,
    advance_local_parallel,
    coarse_march,
    correct,
)
from .compare import FieldDifference, compare_states, match_vertices, speedup
from .config import Algorithm, TwoGridConfig, default_twogrid_config
from .local import (
    LocalConduitProblem,
    LocalPorousProblem,
    build_local_conduit,
    build_local_porous,
    local_correction_conduit,
    local_correction_porous,
)
from .prolong import Prolongator, barycentric, prolong

__all__ = [
    "CompositeSolution",
    "CorrectionSet",
    "LocalParallelSolver",
    "advance_local_parallel",
    "coarse_march",
    "correct",
    "FieldDifference",
    "compare_states",
    "match_vertices",
    "speedup",
    "Algorithm",
    "TwoGridConfig",
    "default_twogrid_config",
    "LocalConduitProblem",
    "LocalPorousProblem",
    "build_local_conduit",
    "build_local_porous",
    "local_correction_conduit",
    "local_correction_porous",
    "Prolongator",
    "barycentric",
    "prolong",
]
