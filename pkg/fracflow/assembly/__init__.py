"""Finite element forms of the coupled porous/conduit model.

Every ``assemble_*`` function accepts an optional ``cells`` argument (positions
in the dof map's cell list) so local subdomain problems reuse the same code.
"""

from .basis import (
    CellBasis,
    cell_basis,
    gradients_from_local,
    local_gradients,
    local_values,
    values_from_local,
)
from .conduit import (
    assemble_conduit_viscous,
    assemble_convection,
    assemble_convection_derivative,
    assemble_divergence,
    assemble_viscous_volume,
)
from .dirichlet import apply_dirichlet, constrain_matrix, constrain_rhs
from .fields import FieldVector, SpaceTimeFunction, boundary_values, evaluate, interpolate
from .forms import ExchangeMatrices, assemble_exchange, assemble_mass, assemble_stiffness
from .interface import (
    EdgeGeometry,
    InterfaceCoupling,
    assemble_bj_friction,
    assemble_edge_load,
    assemble_interface_coupling,
    edge_geometry,
)
from .loads import assemble_load
from .params import ModelParams

__all__ = [
    "CellBasis",
    "cell_basis",
    "local_gradients",
    "local_values",
    "gradients_from_local",
    "values_from_local",
    "assemble_conduit_viscous",
    "assemble_convection",
    "assemble_convection_derivative",
    "assemble_divergence",
    "assemble_viscous_volume",
    "apply_dirichlet",
    "constrain_matrix",
    "constrain_rhs",
    "FieldVector",
    "SpaceTimeFunction",
    "boundary_values",
    "evaluate",
    "interpolate",
    "ExchangeMatrices",
    "assemble_exchange",
    "assemble_mass",
    "assemble_stiffness",
    "EdgeGeometry",
    "InterfaceCoupling",
    "assemble_bj_friction",
    "assemble_edge_load",
    "assemble_interface_coupling",
    "edge_geometry",
    "assemble_load",
    "ModelParams",
]
