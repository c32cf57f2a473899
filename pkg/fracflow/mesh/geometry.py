"""Axis-aligned rectangles and two-region domains."""

from dataclasses import dataclass
from enum import IntEnum
from typing import Tuple

from fracflow.errors import DegenerateDomain

Rect = Tuple[float, float, float, float]

GEOMETRY_TOL = 1e-12


class Region(IntEnum):
    """Cell region tags."""

    POROUS = 0
    CONDUIT = 1


class EdgeTag(IntEnum):
    """Boundary and interface edge tags."""

    OUTER_P = 0
    OUTER_C = 1
    INTERFACE = 2
    OUTLET = 3
    CASED = 4


def rect_area(rect: Rect) -> float:
    x0, y0, x1, y1 = rect
    return (x1 - x0) * (y1 - y0)


def rect_contains(outer: Rect, inner: Rect, tol: float = GEOMETRY_TOL) -> bool:
    """Whether ``inner`` lies inside ``outer`` (closed)."""
    return (
        inner[0] >= outer[0] - tol
        and inner[1] >= outer[1] - tol
        and inner[2] <= outer[2] + tol
        and inner[3] <= outer[3] + tol
    )


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= GEOMETRY_TOL * max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class RectDomain:
    """Porous rectangle and conduit rectangle sharing one full edge.

    Attributes:
        porous_rect: ``(x0, y0, x1, y1)`` of the porous region.
        conduit_rect: ``(x0, y0, x1, y1)`` of the conduit region.
        dimension: Spatial dimension, only 2 is supported.
    """

    porous_rect: Rect
    conduit_rect: Rect
    dimension: int = 2

    def __post_init__(self) -> None:
        if self.dimension != 2:
            raise DegenerateDomain(f"Only dimension 2 is supported, got {self.dimension}")
        for name, rect in (("porous", self.porous_rect), ("conduit", self.conduit_rect)):
            if len(rect) != 4 or rect[2] <= rect[0] or rect[3] <= rect[1]:
                raise DegenerateDomain(f"{name} rectangle {rect} has no area")
        self.interface_side()

    def interface_side(self) -> str:
        """Side of the porous rectangle shared with the conduit.

        Returns:
            One of ``"top"``, ``"bottom"``, ``"left"``, ``"right"``.
        """
        px0, py0, px1, py1 = self.porous_rect
        cx0, cy0, cx1, cy1 = self.conduit_rect
        same_x = _close(px0, cx0) and _close(px1, cx1)
        same_y = _close(py0, cy0) and _close(py1, cy1)
        if same_x and _close(py1, cy0):
            return "top"
        if same_x and _close(py0, cy1):
            return "bottom"
        if same_y and _close(px1, cx0):
            return "right"
        if same_y and _close(px0, cx1):
            return "left"
        raise DegenerateDomain(
            f"Rectangles {self.porous_rect} and {self.conduit_rect} must have disjoint "
            "interiors and share exactly one full edge"
        )

    @property
    def bounding_box(self) -> Rect:
        p, c = self.porous_rect, self.conduit_rect
        return (min(p[0], c[0]), min(p[1], c[1]), max(p[2], c[2]), max(p[3], c[3]))

    @property
    def area(self) -> float:
        return rect_area(self.porous_rect) + rect_area(self.conduit_rect)


def example1_domain() -> RectDomain:
    """Unit porous square below a unit conduit square, interface at y = 1."""
    return RectDomain(porous_rect=(0.0, 0.0, 1.0, 1.0), conduit_rect=(0.0, 1.0, 1.0, 2.0))
