"""Configuration for the two-grid local parallel method."""

from dataclasses import dataclass, field
from enum import Enum

from fracflow.mesh import SubdomainLayout, refinement_levels
from fracflow.stepping import StepConfig


class Algorithm(Enum):
    """Time marching algorithms."""

    TRADITIONAL = "traditional"  # partitioned stepping on the fine mesh
    LOCAL_PARALLEL = "local_parallel"  # coarse marching plus local fine corrections


@dataclass
class TwoGridConfig:
    """Coarse/fine mesh pair and subdomain layout.

    Attributes:
        H: Coarse mesh size.
        h: Fine mesh size; ``H / h`` must be a power of two (1 allowed).
        layout: Subdomain counts and overlap.
        step: Time step and Picard settings shared by both levels.
        algorithm: Which algorithm a driver should run.
    """

    H: float = 0.25
    h: float = 1.0 / 16.0
    layout: SubdomainLayout = field(default_factory=SubdomainLayout)
    step: StepConfig = field(default_factory=StepConfig)
    algorithm: Algorithm = Algorithm.LOCAL_PARALLEL

    def __post_init__(self) -> None:
        if self.H <= 0 or self.h <= 0:
            raise ValueError(f"Mesh sizes must be positive, got H={self.H}, h={self.h}")
        self.levels = refinement_levels(self.H, self.h)


def default_twogrid_config() -> TwoGridConfig:
    """Get default two-grid configuration."""
    return TwoGridConfig()
