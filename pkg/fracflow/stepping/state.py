"""Discrete state at one time level."""

from dataclasses import dataclass, replace
from typing import Dict

import numpy as np

from fracflow.assembly import FieldVector, interpolate
from fracflow.elements import Spaces
from fracflow.mesh import Mesh

from .problem import Problem

FIELD_NAMES = ("p_F", "p_f", "p_m", "u_c", "p")


@dataclass(frozen=True, eq=False)
class State:
    """Coefficient vectors of all five fields at time ``t``."""

    t: float
    p_F: FieldVector
    p_f: FieldVector
    p_m: FieldVector
    u_c: FieldVector
    p: FieldVector

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ValueError(f"State time must be >= 0, got {self.t}")
        meshes = {id(f.dofmap.mesh) for f in self.fields().values()}
        if len(meshes) != 1:
            raise ValueError("State fields live on different meshes")

    def fields(self) -> Dict[str, FieldVector]:
        return {name: getattr(self, name) for name in FIELD_NAMES}

    def with_fields(self, t: float, **coefficients: np.ndarray) -> "State":
        updates = {
            name: getattr(self, name).with_values(values, t) for name, values in coefficients.items()
        }
        return replace(self, t=t, **updates)

    @property
    def mesh(self) -> Mesh:
        return self.p_F.dofmap.mesh

    @property
    def spaces(self) -> Spaces:
        return Spaces(
            mesh=self.mesh, porous=self.p_F.dofmap, velocity=self.u_c.dofmap, pressure=self.p.dofmap
        )


def zero_state(spaces: Spaces, t: float = 0.0) -> State:
    return State(
        t=t,
        p_F=FieldVector.zeros(spaces.porous, t),
        p_f=FieldVector.zeros(spaces.porous, t),
        p_m=FieldVector.zeros(spaces.porous, t),
        u_c=FieldVector.zeros(spaces.velocity, t),
        p=FieldVector.zeros(spaces.pressure, t),
    )


def initial_state(spaces: Spaces, problem: Problem) -> State:
    """Nodal interpolation of the initial data."""
    t = problem.t0
    return State(
        t=t,
        p_F=interpolate(spaces.porous, problem.p_F0, t),
        p_f=interpolate(spaces.porous, problem.p_f0, t),
        p_m=interpolate(spaces.porous, problem.p_m0, t),
        u_c=interpolate(spaces.velocity, problem.u_c0, t),
        p=interpolate(spaces.pressure, problem.p0, t),
    )
