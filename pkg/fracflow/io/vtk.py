"""Legacy ASCII VTK export of meshes and solution fields."""

from pathlib import Path
from typing import Dict, Optional, TextIO, Union

import numpy as np
from loguru import logger

from fracflow.assembly import FieldVector
from fracflow.errors import IoError
from fracflow.mesh import Mesh
from fracflow.stepping import State
from fracflow.twogrid import CompositeSolution

VTK_TRIANGLE = 5
SCALAR_FIELDS = ("p_F", "p_f", "p_m", "p")


def _block(f: TextIO, values: np.ndarray, fmt: str) -> None:
    np.savetxt(f, values, fmt=fmt)


def _point_values(field: FieldVector, n_vertices: int) -> np.ndarray:
    """Vertex values on the whole mesh, zero outside the field's region."""
    dofmap = field.dofmap
    shape = (n_vertices, 2) if dofmap.is_vector else (n_vertices,)
    out = np.zeros(shape)
    out[dofmap.region_vertices] = field.vertex_values()
    return out


def _write(
    path: Path,
    mesh: Mesh,
    title: str,
    scalars: Dict[str, np.ndarray],
    vectors: Dict[str, np.ndarray],
    cell_scalars: Dict[str, np.ndarray],
) -> Path:
    path = Path(path)
    n, m = mesh.n_vertices, mesh.n_cells
    points = np.column_stack([mesh.vertices, np.zeros(n)])
    cells = np.column_stack([np.full(m, 3), mesh.triangles])
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as f:
            f.write("# vtk DataFile Version 2.0\n")
            f.write(f"{title}\n")
            f.write("ASCII\nDATASET UNSTRUCTURED_GRID\n")
            f.write(f"POINTS {n} double\n")
            _block(f, points, "%.17g")
            f.write(f"CELLS {m} {4 * m}\n")
            _block(f, cells, "%d")
            f.write(f"CELL_TYPES {m}\n")
            _block(f, np.full((m, 1), VTK_TRIANGLE), "%d")
            if cell_scalars:
                f.write(f"CELL_DATA {m}\n")
                for name, values in cell_scalars.items():
                    f.write(f"SCALARS {name} int 1\nLOOKUP_TABLE default\n")
                    _block(f, values.reshape(-1, 1), "%d")
            if scalars or vectors:
                f.write(f"POINT_DATA {n}\n")
            for name, values in scalars.items():
                f.write(f"SCALARS {name} double 1\nLOOKUP_TABLE default\n")
                _block(f, values.reshape(-1, 1), "%.17g")
            for name, values in vectors.items():
                f.write(f"VECTORS {name} double\n")
                _block(f, np.column_stack([values, np.zeros(n)]), "%.17g")
    except OSError as e:
        raise IoError(f"Cannot write {path}: {e.strerror or e}") from e
    logger.debug(f"Wrote VTK {path} ({n} points, {m} cells)")
    return path


def write_mesh_vtk(mesh: Mesh, path: Path, owner: Optional[np.ndarray] = None) -> Path:
    """Mesh with region tags (and subdomain owners when given) as cell data."""
    cell_scalars = {"region": mesh.cell_region.astype(np.int64)}
    if owner is not None:
        cell_scalars["owner"] = np.asarray(owner, dtype=np.int64)
    return _write(path, mesh, f"fracflow mesh h={mesh.h:g}", {}, {}, cell_scalars)


def write_vtk(solution: Union[State, CompositeSolution], path: Path) -> Path:
    """Vertex values of every field; bubble contributions are omitted.

    Porous pressures are zero on conduit-only vertices and the conduit fields
    are zero on porous-only vertices. A composite solution is written through
    its continuous representative and carries the subdomain owner per cell.

    Raises:
        IoError: The file cannot be written.
    """
    owner = None
    if isinstance(solution, CompositeSolution):
        owner = solution.decomposition.owner
        state = solution.to_state()
    else:
        state = solution
    mesh = state.mesh
    n = mesh.n_vertices
    scalars = {name: _point_values(getattr(state, name), n) for name in SCALAR_FIELDS}
    vectors = {"u_c": _point_values(state.u_c, n)}
    cell_scalars = {"region": mesh.cell_region.astype(np.int64)}
    if owner is not None:
        cell_scalars["owner"] = owner.astype(np.int64)
    return _write(path, mesh, f"fracflow t={state.t:.17g}", scalars, vectors, cell_scalars)
