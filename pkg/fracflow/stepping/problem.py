"""Sources, boundary data and initial data of one simulation."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from fracflow.assembly import ModelParams, SpaceTimeFunction


def zero_scalar(x: np.ndarray, y: np.ndarray, t: float) -> np.ndarray:
    return np.zeros_like(x)


def zero_vector(x: np.ndarray, y: np.ndarray, t: float) -> tuple[np.ndarray, np.ndarray]:
    return np.zeros_like(x), np.zeros_like(x)


def constant(value: float) -> SpaceTimeFunction:
    def func(x: np.ndarray, y: np.ndarray, t: float) -> np.ndarray:
        return np.full_like(x, value, dtype=np.float64)

    return func


@dataclass(frozen=True, eq=False)
class Problem:
    """Everything the time steppers need besides the mesh.

    Boundary functions are sampled at essential dofs only. Interface loads
    are optional and act on INTERFACE edges: the porous ones on the porous
    side, ``gamma_c`` and ``gamma_convective`` on the conduit momentum (both
    scaled by eta, the latter only with skew convection).

    Attributes:
        name: Label used in logs and outputs.
        params: Model coefficients.
        q_F: Macrofracture source.
        q_f: Microfracture source.
        q_m: Matrix source.
        f_c: Conduit body force.
        p_F_bc: Macrofracture essential data.
        p_f_bc: Microfracture essential data.
        p_m_bc: Matrix essential data.
        u_c_bc: Conduit velocity essential data.
        p_F0: Initial macrofracture pressure.
        p_f0: Initial microfracture pressure.
        p_m0: Initial matrix pressure.
        u_c0: Initial conduit velocity.
        p0: Initial conduit pressure.
        gamma_F: Interface load of the macrofracture equation.
        gamma_f: Interface load of the microfracture equation.
        gamma_m: Interface load of the matrix equation.
        gamma_c: Interface traction load of the conduit equation.
        gamma_convective: Interface load restoring the skew-form boundary term.
        pressure_reference: Value for a pinned conduit pressure dof.
        t0: Initial time.
    """

    name: str
    params: ModelParams
    q_F: SpaceTimeFunction = zero_scalar
    q_f: SpaceTimeFunction = zero_scalar
    q_m: SpaceTimeFunction = zero_scalar
    f_c: SpaceTimeFunction = zero_vector
    p_F_bc: SpaceTimeFunction = zero_scalar
    p_f_bc: SpaceTimeFunction = zero_scalar
    p_m_bc: SpaceTimeFunction = zero_scalar
    u_c_bc: SpaceTimeFunction = zero_vector
    p_F0: SpaceTimeFunction = zero_scalar
    p_f0: SpaceTimeFunction = zero_scalar
    p_m0: SpaceTimeFunction = zero_scalar
    u_c0: SpaceTimeFunction = zero_vector
    p0: SpaceTimeFunction = zero_scalar
    gamma_F: Optional[SpaceTimeFunction] = None
    gamma_f: Optional[SpaceTimeFunction] = None
    gamma_m: Optional[SpaceTimeFunction] = None
    gamma_c: Optional[SpaceTimeFunction] = None
    gamma_convective: Optional[SpaceTimeFunction] = None
    pressure_reference: SpaceTimeFunction = zero_scalar
    t0: float = 0.0


def zero_problem(params: Optional[ModelParams] = None) -> Problem:
    """Homogeneous data: zero sources, boundary and initial values."""
    return Problem(name="zero", params=params or ModelParams())
