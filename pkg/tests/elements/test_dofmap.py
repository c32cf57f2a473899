"""Tests for dof maps of the porous and conduit spaces."""

import numpy as np
import pytest

from fracflow.elements import ElementKind, Spaces, build_dofmap
from fracflow.errors import RegionMismatch
from fracflow.mesh import Mesh, Region, build_region_mesh


class TestDofMap:
    """Tests for build_dofmap on the Example 1 mesh at h = 1/4."""

    def test_porous_counts(self, small_spaces: Spaces) -> None:
        """Should number the 25 porous vertices with 13 essential dofs."""
        porous = small_spaces.porous
        assert porous.n_dofs == 25
        assert porous.dirichlet_set.size == 13

    def test_interface_dofs_not_essential(self, small_spaces: Spaces) -> None:
        """Should leave interior interface vertices free."""
        porous = small_spaces.porous
        coords = porous.dof_coordinates()
        free_top = np.flatnonzero(
            np.isclose(coords[:, 1], 1.0) & (coords[:, 0] > 0.0) & (coords[:, 0] < 1.0)
        )
        assert free_top.size == 3
        assert not np.isin(free_top, porous.dirichlet_set).any()

    def test_velocity_layout(self, small_spaces: Spaces) -> None:
        """Should store vertex then bubble dofs per component."""
        velocity = small_spaces.velocity
        assert velocity.n_dofs == 2 * (25 + 32)
        assert velocity.component_stride == 57
        assert velocity.cell_dofs.shape == (32, 8)
        assert np.array_equal(velocity.cell_dofs[:, 4:], velocity.cell_dofs[:, :4] + 57)
        assert np.array_equal(velocity.bubble_dofs(0), np.arange(25, 57))

    def test_velocity_essential(self, small_spaces: Spaces) -> None:
        """Should fix both components on the 13 outer conduit vertices."""
        velocity = small_spaces.velocity
        assert velocity.dirichlet_set.size == 26
        bubbles = np.concatenate([velocity.bubble_dofs(0), velocity.bubble_dofs(1)])
        assert not np.isin(bubbles, velocity.dirichlet_set).any()

    def test_conduit_pressure_has_no_essential_dofs(self, small_spaces: Spaces) -> None:
        """Should leave the conduit pressure unconstrained."""
        assert small_spaces.pressure.n_dofs == 25
        assert small_spaces.pressure.dirichlet_set.size == 0

    def test_vertex_dofs_outside_region(self, small_spaces: Spaces, small_mesh: Mesh) -> None:
        """Should refuse vertices of the other region."""
        porous_only = np.flatnonzero(small_mesh.vertices[:, 1] < 0.5)[:1]
        with pytest.raises(RegionMismatch):
            small_spaces.velocity.vertex_dofs(porous_only)

    def test_missing_region(self) -> None:
        """Should raise RegionMismatch on a mesh without conduit cells."""
        mesh = build_region_mesh((0.0, 0.0, 1.0, 1.0), 0.5, Region.POROUS)
        with pytest.raises(RegionMismatch):
            build_dofmap(mesh, ElementKind.MINI_VECTOR)

    def test_check_region(self, small_spaces: Spaces) -> None:
        """Should raise RegionMismatch when used on the wrong region."""
        with pytest.raises(RegionMismatch):
            small_spaces.porous.check_region(Region.CONDUIT)
