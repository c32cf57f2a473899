"""Field differences between two runs on geometrically identical meshes."""

from dataclasses import dataclass
from typing import Dict

import numpy as np
from scipy.spatial import cKDTree

from fracflow.errors import NotNested
from fracflow.mesh import Mesh
from fracflow.stepping import FIELD_NAMES, State

MATCH_TOL = 1e-9


@dataclass(frozen=True)
class FieldDifference:
    """Vertex-value difference of one field.

    Attributes:
        max_abs: Largest absolute difference.
        relative_l2: Euclidean norm of the difference over that of the reference.
    """

    max_abs: float
    relative_l2: float


def match_vertices(reference: Mesh, other: Mesh) -> np.ndarray:
    """``perm`` with ``other.vertices[perm[i]] == reference.vertices[i]``.

    Raises:
        NotNested: The vertex sets differ.
    """
    if reference.n_vertices != other.n_vertices:
        raise NotNested(f"Meshes have {reference.n_vertices} and {other.n_vertices} vertices")
    distance, perm = cKDTree(other.vertices).query(reference.vertices)
    scale = max(1.0, float(np.abs(reference.vertices).max()))
    if distance.max() > MATCH_TOL * scale or np.unique(perm).size != perm.size:
        raise NotNested("Meshes do not share their vertices")
    return perm


def _global_values(state: State, name: str) -> np.ndarray:
    field = getattr(state, name)
    dofmap = field.dofmap
    values = field.vertex_values()
    out = np.full((state.mesh.n_vertices,) + values.shape[1:], np.nan)
    out[dofmap.region_vertices] = values
    return out


def compare_states(reference: State, other: State) -> Dict[str, FieldDifference]:
    """Per-field differences of ``other`` against ``reference`` at shared vertices."""
    perm = match_vertices(reference.mesh, other.mesh)
    out = {}
    for name in FIELD_NAMES:
        a = _global_values(reference, name)
        b = _global_values(other, name)[perm]
        defined = ~np.isnan(a.reshape(a.shape[0], -1)).any(axis=1)
        diff = (a - b)[defined]
        norm = float(np.linalg.norm(a[defined]))
        error = float(np.linalg.norm(diff))
        out[name] = FieldDifference(
            max_abs=float(np.abs(diff).max()) if diff.size else 0.0,
            relative_l2=error / norm if norm > 0 else error,
        )
    return out


def speedup(reference_wall: float, other_wall: float) -> float:
    """Wall-time ratio; infinite when ``other_wall`` is zero."""
    return reference_wall / other_wall if other_wall > 0 else float("inf")
