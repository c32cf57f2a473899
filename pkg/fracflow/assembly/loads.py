"""Volume right-hand sides."""

from typing import Optional

import numpy as np

from fracflow.elements import DofMap
from fracflow.mesh import Mesh

from .basis import cell_basis
from .fields import SpaceTimeFunction, evaluate


def assemble_load(
    mesh: Mesh,
    dofmap: DofMap,
    source: SpaceTimeFunction,
    t: float,
    scale: float = 1.0,
    cells: Optional[np.ndarray] = None,
) -> np.ndarray:
    """``scale * (q(., t), v)`` for every basis function of ``dofmap``.

    Conduit momentum loads pass ``scale=eta``.
    """
    basis = cell_basis(dofmap, cells)
    q = evaluate(source, basis.points, t)
    wq = scale * basis.weights
    if dofmap.is_vector:
        local = np.concatenate(
            [np.einsum("nq,nq,qa->na", wq, q[..., c], basis.values) for c in range(2)], axis=1
        )
    else:
        local = np.einsum("nq,nq,qa->na", wq, q, basis.values)
    return np.bincount(basis.dofs.ravel(), weights=local.ravel(), minlength=dofmap.n_dofs)
