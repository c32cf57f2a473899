"""Navier-Stokes conduit step with Picard linearization."""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from loguru import logger
from scipy.sparse import bmat, csr_matrix, spmatrix

from fracflow.assembly import (
    FieldVector,
    ModelParams,
    assemble_conduit_viscous,
    assemble_convection,
    assemble_divergence,
    assemble_edge_load,
    assemble_interface_coupling,
    assemble_load,
    assemble_mass,
    boundary_values,
    constrain_matrix,
    constrain_rhs,
    evaluate,
)
from fracflow.core.events import emit_picard_stagnation
from fracflow.elements import Spaces
from fracflow.errors import PicardStagnation, SingularMatrix, SingularPressureBlock
from fracflow.linalg import LUFactor
from fracflow.mesh import EdgeTag, Region

from .config import StepConfig
from .problem import Problem
from .state import State
from .subsets import active_dofs, local_index, restrict


@dataclass(frozen=True)
class ConduitStepInfo:
    """Outcome of one conduit solve.

    Attributes:
        iterations: Picard iterations performed (1 for linear solves).
        converged: Whether the increment tolerance was met.
        increment: Last relative increment.
        pinned_dof: Pressure dof fixed to remove the constant mode, if any.
        pinned_value: Value imposed at ``pinned_dof``.
    """

    iterations: int
    converged: bool
    increment: float
    pinned_dof: Optional[int] = None
    pinned_value: Optional[float] = None


def relative_increment(new: np.ndarray, old: np.ndarray) -> float:
    """``|new - old| / |new|``; zero when both vanish."""
    diff = float(np.linalg.norm(new - old))
    size = float(np.linalg.norm(new))
    if size == 0.0:
        return 0.0 if diff == 0.0 else float("inf")
    return diff / size


class ConduitSystem:
    """Saddle-point operators of the conduit step on all conduit cells or a subset.

    Args:
        spaces: Dof maps of the mesh.
        params: Model coefficients.
        cfg: Step configuration (``dt``, convection flags).
        positions: Cell positions in the conduit dof maps; all cells when None.
        edge_ids: INTERFACE edges carrying friction and coupling; all when None.
        constrained: Essential velocity dofs; the MINI Dirichlet set when None.
        pin: Conduit pressure dof fixed in every solve, if any.
        mean_gauge: Fix the mass-weighted pressure mean with a multiplier
            instead of a pin. Used when the velocity is constrained on the
            whole boundary, so every continuity row is kept.
    """

    def __init__(
        self,
        spaces: Spaces,
        params: ModelParams,
        cfg: StepConfig,
        positions: Optional[np.ndarray] = None,
        edge_ids: Optional[np.ndarray] = None,
        constrained: Optional[np.ndarray] = None,
        pin: Optional[int] = None,
        mean_gauge: bool = False,
    ) -> None:
        if pin is not None and mean_gauge:
            raise ValueError("Use either a pressure pin or the mean gauge, not both")
        mesh = spaces.mesh
        velocity, pressure = spaces.velocity, spaces.pressure
        self.spaces = spaces
        self.params = params
        self.cfg = cfg
        self.positions = positions
        self.active_u = active_dofs(velocity, positions)
        self.active_p = active_dofs(pressure, positions)
        self.edge_ids = (
            mesh.edges_with_tag(EdgeTag.INTERFACE)
            if edge_ids is None
            else np.asarray(edge_ids, dtype=np.int64)
        )

        eta = params.eta
        self.mass = assemble_mass(mesh, velocity, 1.0, Region.CONDUIT, positions)
        viscous = assemble_conduit_viscous(mesh, velocity, params, positions, self.edge_ids)
        self.base = (eta / cfg.dt * self.mass + viscous).tocsr()
        divergence = assemble_divergence(mesh, velocity, pressure, eta, positions)
        self._divergence = restrict(divergence, self.active_p, self.active_u)
        if self.edge_ids.size:
            coupling = assemble_interface_coupling(mesh, spaces.porous, velocity, params, self.edge_ids)
            self.pressure_coupling = (coupling.B1 + coupling.B3).tocsr()
        else:
            self.pressure_coupling = csr_matrix((velocity.n_dofs, spaces.porous.n_dofs))

        if constrained is None:
            constrained = np.intersect1d(velocity.dirichlet_set, self.active_u)
        self.constrained = np.asarray(constrained, dtype=np.int64)
        self._local_constrained = local_index(self.active_u, self.constrained)
        self.pin = pin
        self._pin_local = (
            None if pin is None else int(local_index(self.active_p, np.array([pin]))[0])
        )
        # gauge row: integrals of the active pressure basis functions
        self.pressure_weights: Optional[np.ndarray] = None
        if mean_gauge:
            pressure_mass = assemble_mass(mesh, pressure, 1.0, Region.CONDUIT, positions)
            row_sums = np.asarray(pressure_mass.sum(axis=1)).ravel()
            self.pressure_weights = row_sums[self.active_p]
        self._linear_factor: Optional[LUFactor] = None
        logger.debug(
            f"Conduit system: {self.active_u.size} velocity and {self.active_p.size} pressure "
            f"dofs, {self.constrained.size} constrained, pin={pin}, mean_gauge={mean_gauge}"
        )

    @property
    def gauged(self) -> bool:
        return self.pressure_weights is not None

    def boundary_flux_weights(self) -> np.ndarray:
        """Weights ``g`` with ``g @ values`` the net flux through constrained dofs.

        Column sums of the restricted divergence: for a velocity vanishing
        off ``constrained`` they give ``-eta`` times the outward flux.
        """
        sums = np.asarray(self._divergence.sum(axis=0)).ravel()
        return sums[self._local_constrained]

    def momentum_rhs(
        self, u_lagged: np.ndarray, p_F_lagged: np.ndarray, problem: Problem, t: float
    ) -> np.ndarray:
        """Body force, lagged inertia, interface pressure loads and interface data."""
        mesh = self.spaces.mesh
        velocity = self.spaces.velocity
        eta = self.params.eta
        rhs = assemble_load(mesh, velocity, problem.f_c, t, scale=eta, cells=self.positions)
        rhs += (eta / self.cfg.dt) * (self.mass @ u_lagged)
        rhs -= self.pressure_coupling @ p_F_lagged
        if self.edge_ids.size:
            if problem.gamma_c is not None:
                rhs += assemble_edge_load(mesh, velocity, self.edge_ids, problem.gamma_c, t, eta)
            if self.cfg.convection and self.cfg.skew and problem.gamma_convective is not None:
                rhs += assemble_edge_load(
                    mesh, velocity, self.edge_ids, problem.gamma_convective, t, eta
                )
        return rhs

    def convection(self, wind: np.ndarray) -> csr_matrix:
        return assemble_convection(
            self.spaces.mesh,
            self.spaces.velocity,
            wind,
            self.params.eta,
            self.cfg.skew,
            self.positions,
        )

    def pin_value(self, problem: Problem, t: float) -> Optional[float]:
        if self.pin is None:
            return None
        point = self.spaces.pressure.dof_coordinates()[self.pin]
        return float(evaluate(problem.pressure_reference, point[None, :], t)[0])

    def solve(
        self,
        momentum: spmatrix,
        rhs_u: np.ndarray,
        velocity_values: np.ndarray,
        pin_value: Optional[float] = None,
        reuse_factor: bool = False,
        mean_value: float = 0.0,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Solve the saddle-point system for one momentum operator.

        Args:
            momentum: Full-size velocity block.
            rhs_u: Full-size momentum right-hand side.
            velocity_values: Essential values aligned with ``constrained``.
            pin_value: Value of the pinned pressure dof.
            reuse_factor: Cache the factorization (linear problems only).
            mean_value: Target of ``pressure_weights @ p`` when gauged.

        Returns:
            Full-length velocity and pressure coefficients.
        """
        n_u = self.active_u.size
        n_p = self.active_p.size
        block = restrict(momentum, self.active_u, self.active_u)
        if self.pressure_weights is None:
            matrix = bmat([[block, self._divergence.T], [self._divergence, None]], format="csr")
            rhs = np.concatenate([rhs_u[self.active_u], np.zeros(n_p)])
        else:
            column = csr_matrix(self.pressure_weights.reshape(-1, 1))
            matrix = bmat(
                [
                    [block, self._divergence.T, None],
                    [self._divergence, None, column],
                    [None, column.T, None],
                ],
                format="csr",
            )
            rhs = np.concatenate([rhs_u[self.active_u], np.zeros(n_p), [mean_value]])

        dofs = self._local_constrained
        values = np.asarray(velocity_values, dtype=np.float64)
        if self._pin_local is not None:
            dofs = np.append(dofs, n_u + self._pin_local)
            values = np.append(values, 0.0 if pin_value is None else pin_value)
        rhs = constrain_rhs(matrix, rhs, dofs, values)

        factor = self._linear_factor if reuse_factor else None
        if factor is None:
            try:
                factor = LUFactor(constrain_matrix(matrix, dofs))
            except SingularMatrix as e:
                if self.pin is None and not self.gauged:
                    raise SingularPressureBlock(
                        "Conduit system singular; the pressure may need a pin or a mean gauge"
                    ) from e
                raise
            if reuse_factor:
                self._linear_factor = factor
        x = factor.solve(rhs)

        u = np.zeros(self.spaces.velocity.n_dofs)
        p = np.zeros(self.spaces.pressure.n_dofs)
        u[self.active_u] = x[:n_u]
        p[self.active_p] = x[n_u : n_u + n_p]
        return u, p


def picard_solve(
    system: ConduitSystem,
    rhs_u: np.ndarray,
    initial_wind: np.ndarray,
    velocity_values: np.ndarray,
    pin_value: Optional[float],
    t: float,
) -> Tuple[np.ndarray, np.ndarray, ConduitStepInfo]:
    """Fixed-point iteration on the Oseen system starting from ``initial_wind``."""
    cfg = system.cfg
    wind = initial_wind
    increment = float("inf")
    converged = False
    iterations = 0
    u = p = None
    for iterations in range(1, cfg.picard_max + 1):
        if cfg.convection:
            matrix = system.base + system.convection(wind)
            u, p = system.solve(matrix, rhs_u, velocity_values, pin_value)
        else:
            u, p = system.solve(system.base, rhs_u, velocity_values, pin_value, reuse_factor=True)
        increment = relative_increment(u, wind)
        wind = u
        if not cfg.convection or increment < cfg.picard_tol:
            converged = True
            break

    if not converged:
        logger.warning(
            f"Picard did not converge at t={t:.6g}: {iterations} iterations, "
            f"increment {increment:.3e}"
        )
        emit_picard_stagnation(t, iterations, increment)
        if cfg.strict_picard:
            raise PicardStagnation(iterations, increment)
    info = ConduitStepInfo(
        iterations=iterations,
        converged=converged,
        increment=increment,
        pinned_dof=system.pin,
        pinned_value=pin_value,
    )
    return u, p, info


def step_conduit(
    state_n: State,
    problem: Problem,
    cfg: StepConfig,
    system: Optional[ConduitSystem] = None,
) -> Tuple[FieldVector, FieldVector, ConduitStepInfo]:
    """Advance ``(u_c, p)`` one step with the time-lagged ``p_F^n`` on the interface.

    Returns:
        Velocity, pressure and the Picard metadata at ``t_n + dt``.
    """
    spaces = state_n.spaces
    if system is None:
        system = ConduitSystem(
            spaces, problem.params, cfg, pin=0 if cfg.pressure_pin else None
        )
    t1 = state_n.t + cfg.dt
    rhs = system.momentum_rhs(state_n.u_c.coefficients, state_n.p_F.coefficients, problem, t1)
    values = boundary_values(spaces.velocity, problem.u_c_bc, t1)
    u, p, info = picard_solve(
        system, rhs, state_n.u_c.coefficients, values, system.pin_value(problem, t1), t1
    )
    return FieldVector(spaces.velocity, u, t1), FieldVector(spaces.pressure, p, t1), info
