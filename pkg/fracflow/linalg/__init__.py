"""Sparse assembly and direct solution.

Triplet accumulation with deterministic sort-then-sum finalization into
scipy CSR matrices, and SuperLU-backed direct solves.
"""

from .direct import LUFactor, lu_solve
from .sparse import SparseMatrix, TripletAccumulator, assemble_begin, assemble_finish

__all__ = [
    "LUFactor",
    "lu_solve",
    "SparseMatrix",
    "TripletAccumulator",
    "assemble_begin",
    "assemble_finish",
]
