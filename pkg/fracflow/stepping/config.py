"""Configuration for one backward-Euler step."""

from dataclasses import dataclass


@dataclass
class StepConfig:
    """Time step and nonlinear solver settings.

    Attributes:
        dt: Time step.
        picard_tol: Relative increment tolerance of the Picard iteration.
        picard_max: Maximum Picard iterations per step.
        skew: Use the skew-symmetric convection form.
        convection: Include convection; False gives the Stokes conduit model.
        strict_picard: Raise PicardStagnation instead of only reporting it.
        pressure_pin: Pin one conduit pressure dof in the global conduit solve.
        workers: Threads for independent solves within a step.
    """

    dt: float = 1.0 / 16.0
    picard_tol: float = 1e-10
    picard_max: int = 50
    skew: bool = True
    convection: bool = True
    strict_picard: bool = False
    pressure_pin: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not 0.0 < self.picard_tol < 1.0:
            raise ValueError(f"picard_tol must be in (0, 1), got {self.picard_tol}")
        if self.picard_max < 1:
            raise ValueError(f"picard_max must be >= 1, got {self.picard_max}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


def default_step_config() -> StepConfig:
    """Get default step configuration."""
    return StepConfig()
