"""Symmetric Gaussian rules on the reference triangle (area 1/2)."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from fracflow.errors import UnsupportedOrder


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Barycentric points and reference-area weights.

    Attributes:
        points: ``(n_points, 3)`` barycentric coordinates.
        weights: ``(n_points,)`` weights summing to 1/2.
        order: Highest polynomial degree integrated exactly.
    """

    points: np.ndarray
    weights: np.ndarray
    order: int

    @property
    def n_points(self) -> int:
        return int(self.weights.size)


def _orbit(a: float) -> np.ndarray:
    b = 1.0 - 2.0 * a
    return np.array([[b, a, a], [a, b, a], [a, a, b]])


def _rule(
    orbits: list[tuple[float, float]], centroid: float = 0.0
) -> tuple[np.ndarray, np.ndarray]:
    points = []
    weights = []
    if centroid:
        points.append(np.full((1, 3), 1.0 / 3.0))
        weights.append(np.array([centroid]))
    for a, w in orbits:
        points.append(_orbit(a))
        weights.append(np.full(3, w))
    # tabulated weights are normalized to unit area
    return np.vstack(points), 0.5 * np.concatenate(weights)


_TABLES = {
    2: dict(orbits=[(1.0 / 6.0, 1.0 / 3.0)]),
    4: dict(
        orbits=[
            (0.445948490915965, 0.223381589678011),
            (0.091576213509771, 0.109951743655322),
        ]
    ),
    5: dict(
        orbits=[
            (0.470142064105115, 0.132394152788506),
            (0.101286507323456, 0.125939180544827),
        ],
        centroid=0.225,
    ),
}


@lru_cache(maxsize=None)
def quadrature(order: int) -> QuadratureRule:
    """Return the tabulated rule exact to ``order``.

    Args:
        order: One of 2, 4 or 5.

    Raises:
        UnsupportedOrder: For any other order.
    """
    if order not in _TABLES:
        raise UnsupportedOrder(f"No quadrature rule of order {order}; use one of {sorted(_TABLES)}")
    points, weights = _rule(**_TABLES[order])
    return QuadratureRule(points=points, weights=weights, order=order)


# Two-point Gauss rule on [0, 1] for edge integrals
EDGE_POINTS = np.array([0.5 - 0.5 / np.sqrt(3.0), 0.5 + 0.5 / np.sqrt(3.0)])
EDGE_WEIGHTS = np.array([0.5, 0.5])
