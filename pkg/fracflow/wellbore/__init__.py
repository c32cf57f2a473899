"""Fractured horizontal wellbore scenario: geometry, outlet rate and k_F sweep."""

from .config import DEFAULT_KF_VALUES, WellboreConfig, default_wellbore_config, wellbore_params
from .problem import WellboreSetup, build_wellbore_problem, edge_classifier, snap_geometry
from .rate import (
    RateCurve,
    RatePoint,
    WellboreRun,
    production_rate,
    production_rate_trapezoid,
    run_wellbore,
    sweep_kF,
)

__all__ = [
    "DEFAULT_KF_VALUES",
    "WellboreConfig",
    "default_wellbore_config",
    "wellbore_params",
    "WellboreSetup",
    "build_wellbore_problem",
    "edge_classifier",
    "snap_geometry",
    "RateCurve",
    "RatePoint",
    "WellboreRun",
    "production_rate",
    "production_rate_trapezoid",
    "run_wellbore",
    "sweep_kF",
]
