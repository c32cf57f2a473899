"""Tests for interface coupling, loads and essential conditions."""

import numpy as np
import pytest
from scipy.sparse import csr_matrix

from fracflow.assembly import (
    ModelParams,
    apply_dirichlet,
    assemble_edge_load,
    assemble_interface_coupling,
    assemble_load,
    boundary_values,
    edge_geometry,
    interpolate,
)
from fracflow.elements import Spaces, build_spaces
from fracflow.errors import MissingBoundaryValue, MissingInterfaceTags
from fracflow.mesh import EdgeTag, Mesh, Region, build_embedded_mesh


class TestEdgeGeometry:
    """Tests for edge_geometry."""

    def test_interface_normals_point_into_porous(self, small_mesh: Mesh) -> None:
        """Should orient interface normals out of the conduit (downwards)."""
        geo = edge_geometry(small_mesh, small_mesh.edges_with_tag(EdgeTag.INTERFACE))
        assert np.allclose(geo.normal, [0.0, -1.0])
        assert np.allclose(geo.length, 0.25)


class TestInterfaceCoupling:
    """Tests for assemble_interface_coupling."""

    def test_traction_and_flux_are_adjoint(self, small_mesh: Mesh, small_spaces: Spaces) -> None:
        """Should give B1 = -(eta/rho) B2^T."""
        params = ModelParams(eta=2.0, rho=4.0)
        c = assemble_interface_coupling(small_mesh, small_spaces.porous, small_spaces.velocity, params)
        assert abs(c.B1 + 0.5 * c.B2.T).max() < 1e-15

    def test_flux_of_uniform_velocity(self, small_mesh: Mesh, small_spaces: Spaces) -> None:
        """Should integrate u.n_c over the unit interface."""
        c = assemble_interface_coupling(
            small_mesh, small_spaces.porous, small_spaces.velocity, ModelParams()
        )
        u = interpolate(small_spaces.velocity, lambda x, y, t: (0 * x, 3.0 + 0 * x)).coefficients
        # -<1, u.n_c> with n_c = (0, -1)
        assert np.sum(c.B2 @ u) == pytest.approx(3.0)

    def test_tangential_gradient_load(self, small_mesh: Mesh, small_spaces: Spaces) -> None:
        """Should integrate c d_t p (v.t) for p = x."""
        params = ModelParams()
        c = assemble_interface_coupling(small_mesh, small_spaces.porous, small_spaces.velocity, params)
        p = small_spaces.porous.dof_coordinates()[:, 0].copy()
        load = c.B3 @ p
        nv = small_spaces.velocity.n_vertices
        assert np.sum(load[:nv]) == pytest.approx(params.bj_gradient)
        assert np.allclose(load[small_spaces.velocity.component_stride :], 0.0)

    def test_no_interface(self) -> None:
        """Should raise MissingInterfaceTags when the mesh has no INTERFACE edges."""
        mesh = build_embedded_mesh(
            (0.0, 0.0, 2.0, 2.0),
            (0.5, 0.5, 1.5, 1.5),
            0.5,
            lambda mid, cells: np.full(mid.shape[0], int(EdgeTag.CASED), dtype=np.int8),
        )
        spaces = build_spaces(mesh)
        with pytest.raises(MissingInterfaceTags):
            assemble_interface_coupling(mesh, spaces.porous, spaces.velocity, ModelParams())


class TestLoads:
    """Tests for volume and edge loads."""

    def test_scalar_load_total(self, small_mesh: Mesh, small_spaces: Spaces) -> None:
        """Should integrate a constant source over the porous square."""
        load = assemble_load(small_mesh, small_spaces.porous, lambda x, y, t: 2.0 + 0 * x, 0.0)
        assert load.sum() == pytest.approx(2.0)

    def test_vector_load_vertex_total(self, small_mesh: Mesh, small_spaces: Spaces) -> None:
        """Should integrate each component against the P1 partition of unity."""
        v = small_spaces.velocity
        load = assemble_load(small_mesh, v, lambda x, y, t: (1.0 + 0 * x, 2.0 + 0 * x), 0.0, scale=3.0)
        nv, stride = v.n_vertices, v.component_stride
        assert load[:nv].sum() == pytest.approx(3.0)
        assert load[stride : stride + nv].sum() == pytest.approx(6.0)

    def test_time_dependent_source(self, small_mesh: Mesh, small_spaces: Spaces) -> None:
        """Should evaluate the source at the requested time."""
        load = assemble_load(small_mesh, small_spaces.porous, lambda x, y, t: t + 0 * x, 4.0)
        assert load.sum() == pytest.approx(4.0)

    def test_edge_load_length(self, small_mesh: Mesh, small_spaces: Spaces) -> None:
        """Should integrate a linear function exactly along the interface."""
        edges = small_mesh.edges_with_tag(EdgeTag.INTERFACE)
        load = assemble_edge_load(small_mesh, small_spaces.porous, edges, lambda x, y, t: x, 0.0)
        assert load.sum() == pytest.approx(0.5)

    def test_edge_load_empty(self, small_mesh: Mesh, small_spaces: Spaces) -> None:
        """Should return zeros without edges."""
        load = assemble_edge_load(small_mesh, small_spaces.porous, [], lambda x, y, t: x, 0.0)
        assert not load.any()


class TestDirichlet:
    """Tests for symmetric elimination."""

    def test_prescribed_values(self) -> None:
        """Should solve with the constrained entries fixed and the matrix symmetric."""
        A = csr_matrix(np.array([[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]]))
        matrix, rhs = apply_dirichlet(A, np.zeros(3), np.array([0, 2]), np.array([1.0, 3.0]))
        x = np.linalg.solve(matrix.toarray(), rhs)
        assert np.allclose(x, [1.0, 2.0, 3.0])
        assert np.allclose(matrix.toarray(), matrix.toarray().T)

    def test_missing_values(self) -> None:
        """Should raise MissingBoundaryValue for mismatched values."""
        A = csr_matrix(np.eye(3))
        with pytest.raises(MissingBoundaryValue):
            apply_dirichlet(A, np.zeros(3), np.array([0, 1]), np.array([1.0]))
        with pytest.raises(MissingBoundaryValue):
            apply_dirichlet(A, np.zeros(3), np.array([0]), np.array([np.nan]))

    def test_boundary_values(self, small_spaces: Spaces) -> None:
        """Should sample the function at the essential dofs."""
        porous = small_spaces.porous
        values = boundary_values(porous, lambda x, y, t: x + y + t, 1.0)
        coords = porous.dof_coordinates()[porous.dirichlet_set]
        assert np.allclose(values, coords.sum(axis=1) + 1.0)
        assert porous.region == Region.POROUS
