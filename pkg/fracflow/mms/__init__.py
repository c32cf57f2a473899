"""Manufactured-solution verification: exact fields, error norms and rate tables."""

from .example1 import (
    ExactField,
    ManufacturedCase,
    example1_case,
    exact_expressions,
    forcing_residuals,
)
from .norms import (
    NormKind,
    compute_norms,
    compute_piecewise_norms,
    infsup_constant,
    subdomain_errors,
)
from .sweep import (
    ERROR_COLUMNS,
    ConvergenceLevel,
    ErrorRow,
    ErrorTable,
    Simulation,
    composite_errors,
    convergence_sweep,
    rate,
    run_level,
    simulate,
    state_errors,
)

__all__ = [
    "ExactField",
    "ManufacturedCase",
    "example1_case",
    "exact_expressions",
    "forcing_residuals",
    "NormKind",
    "compute_norms",
    "compute_piecewise_norms",
    "infsup_constant",
    "subdomain_errors",
    "ERROR_COLUMNS",
    "ConvergenceLevel",
    "ErrorRow",
    "ErrorTable",
    "composite_errors",
    "convergence_sweep",
    "rate",
    "run_level",
    "Simulation",
    "simulate",
    "state_errors",
]
