"""Reference elements, quadrature rules and dof maps."""

from .dofmap import DofMap, ElementKind, Spaces, build_dofmap, build_spaces
from .quadrature import EDGE_POINTS, EDGE_WEIGHTS, QuadratureRule, quadrature
from .reference import (
    REF_GRAD_LAMBDA,
    bubble_bary_derivatives,
    bubble_shape,
    bubble_values,
    p1_shape,
    p1_values,
)

__all__ = [
    "DofMap",
    "ElementKind",
    "Spaces",
    "build_dofmap",
    "build_spaces",
    "EDGE_POINTS",
    "EDGE_WEIGHTS",
    "QuadratureRule",
    "quadrature",
    "REF_GRAD_LAMBDA",
    "bubble_bary_derivatives",
    "bubble_shape",
    "bubble_values",
    "p1_shape",
    "p1_values",
]
