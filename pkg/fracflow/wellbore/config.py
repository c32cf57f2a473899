"""Configuration of the fractured horizontal wellbore scenario."""

from dataclasses import dataclass, field
from typing import Tuple

from fracflow.assembly import ModelParams
from fracflow.mesh import Rect, SubdomainLayout

DEFAULT_KF_VALUES = (2e-2, 4e-2, 6e-2, 8e-2, 2e-1, 4e-1, 6e-1, 8e-1)


def wellbore_params(k_F: float = 1e-3) -> ModelParams:
    """Shale reservoir coefficients with a water-repellent proppant."""
    return ModelParams(
        phi_m=1e-2,
        phi_f=1e-3,
        phi_F=1e-4,
        C_m=1e-4,
        C_f=1e-4,
        C_F=1e-4,
        k_m=1e-8,
        k_f=1e-6,
        k_F=k_F,
        mu_tilde=1e-2,
        nu=1e-2,
        sigma=0.5,
        rho=10.0,
        alpha=1.0,
        eta=1.0,
    )


def wellbore_layout() -> SubdomainLayout:
    return SubdomainLayout(counts=(2, 2), overlap=1.0 / 3.0, conduit_counts=(1, 1))


@dataclass
class WellboreConfig:
    """Geometry, boundary data and discretization of the wellbore run.

    Attributes:
        outer: Reservoir square.
        conduit: Horizontal wellbore rectangle before snapping.
        outlet: ``(y0, y1)`` span of the outlet on the conduit's right side.
        interface_sides: Conduit sides open to the fractures.
        p_m_in: Matrix pressure on the outer boundary.
        p_f_in: Microfracture pressure on the outer boundary.
        p_F_in: Macrofracture pressure on the outer boundary.
        params: Model coefficients.
        H: Coarse mesh size; geometry is snapped to its lines.
        h: Fine mesh size; H/h must be a power of two.
        dt: Time step.
        T: Final time.
        convection: Navier-Stokes instead of Stokes in the wellbore.
        k_F_values: Macrofracture permeabilities of the sweep.
        layout: Subdomains of the local parallel method.
    """

    outer: Rect = (0.0, 0.0, 6.0, 6.0)
    conduit: Rect = (1.9, 2.4, 4.4, 3.6)
    outlet: Tuple[float, float] = (2.7, 3.3)
    interface_sides: Tuple[str, ...] = ("top", "bottom")
    p_m_in: float = 4.0e3
    p_f_in: float = 1.6e3
    p_F_in: float = 1.0e3
    params: ModelParams = field(default_factory=wellbore_params)
    H: float = 1.0 / 3.0
    h: float = 1.0 / 12.0
    dt: float = 0.05
    T: float = 10.0
    convection: bool = False
    k_F_values: Tuple[float, ...] = DEFAULT_KF_VALUES
    layout: SubdomainLayout = field(default_factory=wellbore_layout)

    def __post_init__(self) -> None:
        x0, y0, x1, y1 = self.conduit
        ox0, oy0, ox1, oy1 = self.outer
        if not (ox0 < x0 < x1 < ox1 and oy0 < y0 < y1 < oy1):
            raise ValueError(f"Conduit {self.conduit} must lie strictly inside {self.outer}")
        if self.outlet[0] >= self.outlet[1]:
            raise ValueError(f"Outlet span {self.outlet} is empty")
        unknown = set(self.interface_sides) - {"top", "bottom", "left", "right"}
        if unknown:
            raise ValueError(f"Unknown interface sides {sorted(unknown)}")
        if "right" in self.interface_sides:
            raise ValueError("The outlet side cannot also be an interface side")


def default_wellbore_config() -> WellboreConfig:
    """Get default wellbore configuration."""
    return WellboreConfig()
