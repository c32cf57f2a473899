"""Triple-porosity step: three decoupled pressure solves."""

from concurrent.futures import Executor
from typing import Dict, Optional, Tuple

import numpy as np
from loguru import logger
from scipy.sparse import csr_matrix

from fracflow.assembly import (
    FieldVector,
    ModelParams,
    assemble_edge_load,
    assemble_interface_coupling,
    assemble_load,
    assemble_mass,
    assemble_stiffness,
    boundary_values,
    constrain_matrix,
    constrain_rhs,
)
from fracflow.elements import Spaces
from fracflow.linalg import LUFactor
from fracflow.mesh import EdgeTag, Region

from .config import StepConfig
from .problem import Problem
from .state import State
from .subsets import active_dofs, local_index, restrict

POROUS_FIELDS = ("p_F", "p_f", "p_m")


class PorousSystem:
    """Factorized operators of the porous step on all porous cells or a subset.

    Operators depend only on the mesh, the parameters and ``dt``, so one
    instance serves every step of a run.

    Args:
        spaces: Dof maps of the mesh.
        params: Model coefficients.
        dt: Time step.
        positions: Cell positions in the porous dof map; all cells when None.
        edge_ids: INTERFACE edges carrying the flux term; all when None.
        constrained: Essential dofs; the porous Dirichlet set when None.
    """

    def __init__(
        self,
        spaces: Spaces,
        params: ModelParams,
        dt: float,
        positions: Optional[np.ndarray] = None,
        edge_ids: Optional[np.ndarray] = None,
        constrained: Optional[np.ndarray] = None,
    ) -> None:
        mesh = spaces.mesh
        dofmap = spaces.porous
        self.spaces = spaces
        self.params = params
        self.dt = dt
        self.positions = positions
        self.active = active_dofs(dofmap, positions)
        self.edge_ids = (
            mesh.edges_with_tag(EdgeTag.INTERFACE)
            if edge_ids is None
            else np.asarray(edge_ids, dtype=np.int64)
        )

        self.mass = assemble_mass(mesh, dofmap, 1.0, Region.POROUS, positions)
        stiffness = assemble_stiffness(mesh, dofmap, 1.0, Region.POROUS, positions)
        if self.edge_ids.size:
            self.flux = assemble_interface_coupling(
                mesh, dofmap, spaces.velocity, params, self.edge_ids
            ).B2
        else:
            self.flux = csr_matrix((dofmap.n_dofs, spaces.velocity.n_dofs))

        p = params
        self.storage = {
            "p_F": p.phi_F * p.C_F / dt,
            "p_f": p.phi_f * p.C_f / dt,
            "p_m": p.phi_m * p.C_m / dt,
        }
        diagonal = {
            "p_F": self.storage["p_F"] + p.exchange_Ff,
            "p_f": self.storage["p_f"] + p.exchange_Ff + p.exchange_fm,
            "p_m": self.storage["p_m"] + p.exchange_fm,
        }
        conductivity = {
            "p_F": p.k_F / p.mu_tilde,
            "p_f": p.k_f / p.mu_tilde,
            "p_m": p.k_m / p.mu_tilde,
        }

        if constrained is None:
            constrained = np.intersect1d(dofmap.dirichlet_set, self.active)
        self.constrained = np.asarray(constrained, dtype=np.int64)
        self._local_constrained = local_index(self.active, self.constrained)

        self.matrices: Dict[str, csr_matrix] = {}
        self.factors: Dict[str, LUFactor] = {}
        for name in POROUS_FIELDS:
            full = (diagonal[name] * self.mass + conductivity[name] * stiffness).tocsr()
            matrix = restrict(full, self.active, self.active)
            self.matrices[name] = matrix
            self.factors[name] = LUFactor(constrain_matrix(matrix, self._local_constrained))
        logger.debug(
            f"Porous system: {self.active.size} dofs, {self.constrained.size} constrained, "
            f"{self.edge_ids.size} interface edges"
        )

    def right_hand_sides(
        self, lagged: Dict[str, np.ndarray], u_c: np.ndarray, problem: Problem, t: float
    ) -> Dict[str, np.ndarray]:
        """Loads plus lagged storage, exchange and interface flux terms on the active dofs."""
        mesh = self.spaces.mesh
        dofmap = self.spaces.porous
        p = self.params
        sources = {"p_F": problem.q_F, "p_f": problem.q_f, "p_m": problem.q_m}
        gammas = {"p_F": problem.gamma_F, "p_f": problem.gamma_f, "p_m": problem.gamma_m}

        rhs = {}
        for name in POROUS_FIELDS:
            load = assemble_load(mesh, dofmap, sources[name], t, cells=self.positions)
            if gammas[name] is not None and self.edge_ids.size:
                load += assemble_edge_load(mesh, dofmap, self.edge_ids, gammas[name], t)
            rhs[name] = load

        pF, pf, pm = lagged["p_F"], lagged["p_f"], lagged["p_m"]
        M = self.mass
        rhs["p_F"] += M @ (self.storage["p_F"] * pF + p.exchange_Ff * pf) - self.flux @ u_c
        rhs["p_f"] += M @ (self.storage["p_f"] * pf + p.exchange_Ff * pF + p.exchange_fm * pm)
        rhs["p_m"] += M @ (self.storage["p_m"] * pm + p.exchange_fm * pf)
        return {name: r[self.active] for name, r in rhs.items()}

    def solve(
        self,
        rhs: Dict[str, np.ndarray],
        values: Dict[str, np.ndarray],
        executor: Optional[Executor] = None,
    ) -> Dict[str, np.ndarray]:
        """Solve the three systems; returns full-length coefficient vectors.

        Args:
            rhs: Right-hand sides on the active dofs.
            values: Essential values aligned with ``constrained``.
            executor: Runs the three solves concurrently when given.
        """

        def one(name: str) -> np.ndarray:
            b = constrain_rhs(self.matrices[name], rhs[name], self._local_constrained, values[name])
            x = np.zeros(self.spaces.porous.n_dofs)
            x[self.active] = self.factors[name].solve(b)
            return x

        if executor is None:
            return {name: one(name) for name in POROUS_FIELDS}
        futures = {name: executor.submit(one, name) for name in POROUS_FIELDS}
        return {name: futures[name].result() for name in POROUS_FIELDS}


def step_porous(
    state_n: State,
    problem: Problem,
    cfg: StepConfig,
    system: Optional[PorousSystem] = None,
    executor: Optional[Executor] = None,
) -> Tuple[FieldVector, FieldVector, FieldVector]:
    """Advance ``p_F``, ``p_f`` and ``p_m`` one step using only ``state_n``.

    Args:
        state_n: State at ``t_n``.
        problem: Sources and boundary data.
        cfg: Step configuration.
        system: Cached operators; built on the fly when None.
        executor: Optional executor for the three independent solves.

    Returns:
        The three pressures at ``t_n + dt``.
    """
    spaces = state_n.spaces
    if system is None:
        system = PorousSystem(spaces, problem.params, cfg.dt)
    t1 = state_n.t + cfg.dt
    lagged = {name: getattr(state_n, name).coefficients for name in POROUS_FIELDS}
    rhs = system.right_hand_sides(lagged, state_n.u_c.coefficients, problem, t1)
    bc = {"p_F": problem.p_F_bc, "p_f": problem.p_f_bc, "p_m": problem.p_m_bc}
    values = {name: boundary_values(spaces.porous, bc[name], t1) for name in POROUS_FIELDS}
    solution = system.solve(rhs, values, executor)
    return tuple(FieldVector(spaces.porous, solution[name], t1) for name in POROUS_FIELDS)
