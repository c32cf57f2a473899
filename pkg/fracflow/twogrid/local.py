"""Fine-grid residual corrections on extended subdomains.

Corrections are computed in total-field form: the local problem is solved for
``w = P + e`` where ``P`` is the prolonged coarse solution, with ``w = P`` on
artificial boundary dofs and the physical essential data on physical
boundary dofs; the correction is ``e = w - P`` on the subdomain's dofs.
"""

from dataclasses import dataclass
from typing import Dict, Union

import numpy as np
from loguru import logger
from scipy.sparse import spmatrix

from fracflow.assembly import assemble_convection_derivative, boundary_values
from fracflow.elements import DofMap, Spaces
from fracflow.mesh import EdgeTag, Subdomain
from fracflow.stepping import (
    POROUS_FIELDS,
    ConduitSystem,
    PorousSystem,
    Problem,
    StepConfig,
    active_dofs,
    artificial_vertices,
)


def _essential_values(
    dofmap: DofMap, constrained: np.ndarray, prolonged: np.ndarray, data: np.ndarray
) -> np.ndarray:
    """Prolonged values on artificial dofs, physical data where the dof is physical."""
    full = prolonged.copy()
    full[dofmap.dirichlet_set] = data
    physical = np.isin(constrained, dofmap.dirichlet_set)
    return np.where(physical, full[constrained], prolonged[constrained])


def balance_flux(
    weights: np.ndarray, values: np.ndarray, adjustable: np.ndarray
) -> np.ndarray:
    """Remove the net flux ``weights @ values`` using the ``adjustable`` entries only.

    The smallest change in the Euclidean norm; values are returned unchanged
    when no adjustable entry carries flux.
    """
    g = np.where(adjustable, weights, 0.0)
    gg = float(g @ g)
    if gg == 0.0:
        return values
    return values - (float(weights @ values) / gg) * g


def _mask(values: np.ndarray, active: np.ndarray) -> np.ndarray:
    out = np.zeros_like(values)
    out[active] = values[active]
    return out


def _mass_norm(mass: spmatrix, e: np.ndarray) -> float:
    return float(np.sqrt(max(e @ (mass @ e), 0.0)))


@dataclass(frozen=True, eq=False)
class LocalPorousProblem:
    """Factorized porous operators of one extended subdomain."""

    subdomain: Subdomain
    system: PorousSystem

    @property
    def active(self) -> np.ndarray:
        return self.system.active


@dataclass(frozen=True, eq=False)
class LocalConduitProblem:
    """Conduit operators of one extended subdomain."""

    subdomain: Subdomain
    system: ConduitSystem

    @property
    def enclosed(self) -> bool:
        return self.system.gauged


LocalProblem = Union[LocalPorousProblem, LocalConduitProblem]


def build_local_porous(
    spaces: Spaces, subdomain: Subdomain, problem: Problem, cfg: StepConfig
) -> LocalPorousProblem:
    dofmap = spaces.porous
    positions = dofmap.cell_positions(subdomain.cells)
    active = active_dofs(dofmap, positions)
    artificial = dofmap.vertex_dofs(artificial_vertices(dofmap, positions))
    physical = np.intersect1d(dofmap.dirichlet_set, active)
    system = PorousSystem(
        spaces,
        problem.params,
        cfg.dt,
        positions=positions,
        edge_ids=subdomain.interface_edges,
        constrained=np.union1d(artificial, physical),
    )
    return LocalPorousProblem(subdomain=subdomain, system=system)


def build_local_conduit(
    spaces: Spaces, subdomain: Subdomain, problem: Problem, cfg: StepConfig
) -> LocalConduitProblem:
    """Conduit operators of a subdomain; enclosed subdomains get a mean gauge.

    A subdomain is enclosed when none of its edges is INTERFACE or OUTLET, so
    the velocity is constrained on its whole boundary.
    """
    mesh = spaces.mesh
    velocity = spaces.velocity
    positions = velocity.cell_positions(subdomain.cells)
    active = active_dofs(velocity, positions)
    vertices = artificial_vertices(velocity, positions)
    artificial = np.concatenate([velocity.vertex_dofs(vertices, k) for k in range(2)])
    physical = np.intersect1d(velocity.dirichlet_set, active)

    outlet = mesh.edges_with_tag(EdgeTag.OUTLET)
    has_outlet = bool(np.isin(mesh.edge_conduit_cell[outlet], subdomain.cells).any())
    enclosed = subdomain.interface_edges.size == 0 and not has_outlet
    if enclosed:
        logger.debug(f"Subdomain {subdomain.index} is enclosed; gauging the pressure mean")

    system = ConduitSystem(
        spaces,
        problem.params,
        cfg,
        positions=positions,
        edge_ids=subdomain.interface_edges,
        constrained=np.union1d(artificial, physical),
        mean_gauge=enclosed,
    )
    return LocalConduitProblem(subdomain=subdomain, system=system)


def local_correction_porous(
    local: LocalPorousProblem,
    coarse_n: Dict[str, np.ndarray],
    coarse_n1: Dict[str, np.ndarray],
    corrections_n: Dict[str, np.ndarray],
    problem: Problem,
    t: float,
) -> Dict[str, np.ndarray]:
    """Porous corrections ``e_F, e_f, e_m`` at ``t`` on one subdomain.

    Args:
        local: Subdomain operators.
        coarse_n: Prolonged coarse fields at ``t_n`` (porous pressures and ``u_c``).
        coarse_n1: Prolonged coarse porous pressures at ``t``.
        corrections_n: This subdomain's corrections at ``t_n``.
        problem: Sources and boundary data.
        t: New time level.

    Returns:
        Full-length correction vectors keyed by field name, zero off the subdomain.
    """
    system = local.system
    dofmap = system.spaces.porous
    lagged = {name: coarse_n[name] + corrections_n[name] for name in POROUS_FIELDS}
    rhs = system.right_hand_sides(lagged, coarse_n["u_c"], problem, t)
    bc = {"p_F": problem.p_F_bc, "p_f": problem.p_f_bc, "p_m": problem.p_m_bc}
    values = {
        name: _essential_values(
            dofmap, system.constrained, coarse_n1[name], boundary_values(dofmap, bc[name], t)
        )
        for name in POROUS_FIELDS
    }
    solution = system.solve(rhs, values)
    return {name: _mask(solution[name] - coarse_n1[name], system.active) for name in POROUS_FIELDS}


def local_correction_conduit(
    local: LocalConduitProblem,
    coarse_n: Dict[str, np.ndarray],
    coarse_n1: Dict[str, np.ndarray],
    corrections_n: Dict[str, np.ndarray],
    problem: Problem,
    t: float,
) -> Dict[str, np.ndarray]:
    """Conduit corrections ``e_c`` (key ``u_c``) and ``xi`` (key ``p``) at ``t``.

    One linear solve: the convection term is linearized about the prolonged
    coarse velocity at ``t`` and the interface loads use the coarse ``p_F^n``.
    """
    system = local.system
    cfg = system.cfg
    spaces = system.spaces
    U = coarse_n1["u_c"]
    rhs = system.momentum_rhs(coarse_n["u_c"] + corrections_n["u_c"], coarse_n["p_F"], problem, t)
    if cfg.convection:
        wind = system.convection(U)
        derivative = assemble_convection_derivative(
            spaces.mesh, spaces.velocity, U, system.params.eta, cfg.skew, system.positions
        )
        momentum = system.base + wind + derivative
        rhs = rhs + wind @ U
    else:
        momentum = system.base

    values = _essential_values(
        spaces.velocity,
        system.constrained,
        U,
        boundary_values(spaces.velocity, problem.u_c_bc, t),
    )
    mean_value = 0.0
    if system.gauged:
        # closed boundary: data must be divergence compatible, mean follows the coarse one
        physical = np.isin(system.constrained, spaces.velocity.dirichlet_set)
        values = balance_flux(system.boundary_flux_weights(), values, ~physical)
        mean_value = float(system.pressure_weights @ coarse_n1["p"][system.active_p])
    w, pi = system.solve(
        momentum, rhs, values, reuse_factor=not cfg.convection, mean_value=mean_value
    )
    return {
        "u_c": _mask(w - U, system.active_u),
        "p": _mask(pi - coarse_n1["p"], system.active_p),
    }


def correction_norm(local: LocalProblem, correction: Dict[str, np.ndarray]) -> float:
    """L2 norm over the extended subdomain of ``e_F`` or ``e_c``."""
    if isinstance(local, LocalPorousProblem):
        return _mass_norm(local.system.mass, correction["p_F"])
    return _mass_norm(local.system.mass, correction["u_c"])
