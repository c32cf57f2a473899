"""Physical coefficients of the coupled model."""

import math

from pydantic import BaseModel, ConfigDict, Field

SPACE_DIMENSION = 2


class ModelParams(BaseModel):
    """Porosities, compressibilities, permeabilities and fluid data.

    Every coefficient defaults to 1, the manufactured-solution setting.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    phi_F: float = Field(1.0, gt=0, description="Macrofracture porosity")
    phi_f: float = Field(1.0, gt=0, description="Microfracture porosity")
    phi_m: float = Field(1.0, gt=0, description="Matrix porosity")
    C_F: float = Field(1.0, gt=0, description="Macrofracture compressibility")
    C_f: float = Field(1.0, gt=0, description="Microfracture compressibility")
    C_m: float = Field(1.0, gt=0, description="Matrix compressibility")
    k_F: float = Field(1.0, gt=0, description="Macrofracture permeability")
    k_f: float = Field(1.0, gt=0, description="Microfracture permeability")
    k_m: float = Field(1.0, gt=0, description="Matrix permeability")
    sigma: float = Field(1.0, gt=0, description="Matrix/microfracture shape factor")
    sigma_star: float = Field(1.0, gt=0, description="Microfracture/macrofracture shape factor")
    mu_tilde: float = Field(1.0, gt=0, description="Dynamic viscosity")
    nu: float = Field(1.0, gt=0, description="Kinematic viscosity")
    rho: float = Field(1.0, gt=0, description="Density")
    alpha: float = Field(1.0, gt=0, description="Beavers-Joseph constant")
    eta: float = Field(1.0, gt=0, description="Conduit rescaling factor")

    @property
    def exchange_Ff(self) -> float:
        """Coefficient of the macro/micro fracture transfer."""
        return self.sigma_star * self.k_f / self.mu_tilde

    @property
    def exchange_fm(self) -> float:
        """Coefficient of the micro fracture/matrix transfer."""
        return self.sigma * self.k_m / self.mu_tilde

    @property
    def bj_friction(self) -> float:
        """Coefficient of the tangential friction term on the interface."""
        trace_pi = SPACE_DIMENSION * self.k_F
        return self.eta * self.nu * self.alpha * math.sqrt(SPACE_DIMENSION) / math.sqrt(trace_pi)

    @property
    def bj_gradient(self) -> float:
        """Coefficient of the tangential macrofracture pressure gradient load."""
        return self.eta * self.nu * self.alpha * math.sqrt(self.k_F) / self.mu_tilde
