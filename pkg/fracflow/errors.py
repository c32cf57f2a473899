"""Exception hierarchy for fracflow."""

from typing import Optional


class FracflowError(Exception):
    """Base class for every error raised by fracflow."""


# Geometry and meshing


class DegenerateDomain(FracflowError, ValueError):
    """Rectangles have no area, overlap, or do not share a full edge."""


class NonDivisibleStep(FracflowError, ValueError):
    """Mesh size does not tile a rectangle side."""


class MisalignedLayout(FracflowError, ValueError):
    """A subdomain rectangle side does not lie on a mesh line."""


class GeometryMisaligned(FracflowError, ValueError):
    """Wellbore geometry cannot be placed on the mesh lines."""


class NotNested(FracflowError, ValueError):
    """Fine mesh is not a refinement of the coarse mesh."""


# Elements and assembly


class InvalidBarycentric(FracflowError, ValueError):
    """Barycentric coordinates are negative or do not sum to one."""


class UnsupportedOrder(FracflowError, ValueError):
    """No quadrature rule is tabulated for the requested order."""


class RegionMismatch(FracflowError, ValueError):
    """A dof map is used on a region it was not built for."""


class MissingInterfaceTags(FracflowError, ValueError):
    """The mesh carries no INTERFACE edges."""


class NonMatchingInterface(FracflowError, ValueError):
    """An interface edge lacks a cell on one of its two sides."""


class MissingBoundaryValue(FracflowError, ValueError):
    """Essential data missing for a constrained dof."""


# Linear algebra and solvers


class IndexOutOfRange(FracflowError, IndexError):
    """Triplet index outside the matrix shape."""


class SingularMatrix(FracflowError, ArithmeticError):
    """Direct factorization met a (numerically) zero pivot."""


class SolverFailure(FracflowError, RuntimeError):
    """A linear solve produced a non-finite solution or failed."""


class PicardStagnation(FracflowError, RuntimeError):
    """Picard iteration hit its iteration cap before the tolerance."""

    def __init__(self, iterations: int, increment: float) -> None:
        self.iterations = iterations
        self.increment = increment
        super().__init__(
            f"Picard iteration not converged after {iterations} iterations "
            f"(relative increment {increment:.3e})"
        )


class SingularPressureBlock(FracflowError, ArithmeticError):
    """Conduit saddle-point system singular with neither a pin nor a mean gauge."""


# Two-grid and post-processing


class MissingCorrection(FracflowError, LookupError):
    """A subdomain correction is absent when merging."""


class EmptyOutlet(FracflowError, ValueError):
    """No OUTLET edges to integrate over."""


# Configuration and I/O


class ConfigError(FracflowError, ValueError):
    """Base class for run configuration problems."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class ParseError(ConfigError):
    """Malformed configuration line."""


class UnknownKey(ConfigError):
    """Section or key not known to the configuration schema."""


class TypeMismatch(ConfigError):
    """Value cannot be converted to the declared type."""


class InvariantViolation(ConfigError):
    """Value has the right type but violates a constraint."""


class IoError(FracflowError, OSError):
    """Output file could not be written or read back."""
