"""Discrete fields attached to a dof map."""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from fracflow.elements import DofMap

# f(x, y, t) -> array; vector fields return a pair (fx, fy)
SpaceTimeFunction = Callable[[np.ndarray, np.ndarray, float], np.ndarray]


@dataclass(frozen=True, eq=False)
class FieldVector:
    """Coefficients of one discrete field at one time level."""

    dofmap: DofMap
    coefficients: np.ndarray
    time: float = 0.0

    def __post_init__(self) -> None:
        if self.coefficients.shape != (self.dofmap.n_dofs,):
            raise ValueError(
                f"Field has {self.coefficients.shape} coefficients, "
                f"dof map expects ({self.dofmap.n_dofs},)"
            )

    @classmethod
    def zeros(cls, dofmap: DofMap, time: float = 0.0) -> "FieldVector":
        return cls(dofmap, np.zeros(dofmap.n_dofs), time)

    def with_values(self, coefficients: np.ndarray, time: float) -> "FieldVector":
        return FieldVector(self.dofmap, coefficients, time)

    def vertex_values(self) -> np.ndarray:
        """Values at the region's vertices, ``(n_vertices,)`` or ``(n_vertices, 2)``."""
        nv = self.dofmap.n_vertices
        if not self.dofmap.is_vector:
            return self.coefficients.copy()
        stride = self.dofmap.component_stride
        return np.column_stack([self.coefficients[:nv], self.coefficients[stride : stride + nv]])


def evaluate(func: SpaceTimeFunction, points: np.ndarray, t: float) -> np.ndarray:
    """Evaluate ``func`` at ``points[..., 2]``, broadcasting constant results."""
    x = points[..., 0]
    y = points[..., 1]
    value = func(x, y, t)
    if isinstance(value, (tuple, list)):
        return np.stack([np.broadcast_to(np.asarray(v, dtype=np.float64), x.shape) for v in value], axis=-1)
    value = np.asarray(value, dtype=np.float64)
    if value.ndim == x.ndim + 1 and value.shape[-1] == 2:
        return value
    return np.broadcast_to(value, x.shape).copy()


def interpolate(dofmap: DofMap, func: SpaceTimeFunction, t: float = 0.0) -> FieldVector:
    """Nodal interpolant of ``func`` at time ``t``; MINI bubbles are set to zero."""
    values = evaluate(func, dofmap.dof_coordinates(), t)
    coefficients = np.zeros(dofmap.n_dofs)
    nv = dofmap.n_vertices
    if dofmap.is_vector:
        stride = dofmap.component_stride
        coefficients[:nv] = values[:, 0]
        coefficients[stride : stride + nv] = values[:, 1]
    else:
        coefficients[:nv] = values
    return FieldVector(dofmap, coefficients, t)


def boundary_values(dofmap: DofMap, func: SpaceTimeFunction, t: float) -> np.ndarray:
    """Nodal values of ``func`` at ``dofmap.dirichlet_set``."""
    return interpolate(dofmap, func, t).coefficients[dofmap.dirichlet_set]
