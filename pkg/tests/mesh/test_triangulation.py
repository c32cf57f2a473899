"""Tests for structured meshes and uniform refinement."""

import numpy as np
import pytest

from fracflow.errors import DegenerateDomain, NonDivisibleStep
from fracflow.mesh import (
    EdgeTag,
    Mesh,
    RectDomain,
    Region,
    build_embedded_mesh,
    build_rect_mesh,
    example1_domain,
    refine_uniform,
    refinement_levels,
)


class TestRectDomain:
    """Tests for RectDomain."""

    def test_example1_interface_side(self) -> None:
        """Should find the porous top side as interface."""
        assert example1_domain().interface_side() == "top"

    def test_side_by_side(self) -> None:
        """Should accept a conduit to the right of the porous block."""
        domain = RectDomain((0.0, 0.0, 1.0, 1.0), (1.0, 0.0, 2.0, 1.0))
        assert domain.interface_side() == "right"
        assert domain.area == pytest.approx(2.0)

    def test_partial_edge(self) -> None:
        """Should reject rectangles sharing only part of an edge."""
        with pytest.raises(DegenerateDomain):
            RectDomain((0.0, 0.0, 1.0, 1.0), (0.0, 1.0, 0.5, 2.0))

    def test_degenerate(self) -> None:
        """Should reject rectangles without area."""
        with pytest.raises(DegenerateDomain):
            RectDomain((0.0, 0.0, 0.0, 1.0), (0.0, 1.0, 1.0, 2.0))

    def test_three_dimensions_rejected(self) -> None:
        """Should only support two dimensions."""
        with pytest.raises(DegenerateDomain):
            RectDomain((0.0, 0.0, 1.0, 1.0), (0.0, 1.0, 1.0, 2.0), dimension=3)


class TestBuildRectMesh:
    """Tests for build_rect_mesh."""

    def test_counts(self, small_mesh: Mesh) -> None:
        """Should build 45 vertices and 32 cells per region at h = 1/4."""
        assert small_mesh.n_vertices == 45
        assert small_mesh.region_cells(Region.POROUS).size == 32
        assert small_mesh.region_cells(Region.CONDUIT).size == 32

    def test_edge_tags(self, small_mesh: Mesh) -> None:
        """Should tag 4 interface edges and 12 outer edges per region."""
        assert small_mesh.edges_with_tag(EdgeTag.INTERFACE).size == 4
        assert small_mesh.edges_with_tag(EdgeTag.OUTER_P).size == 12
        assert small_mesh.edges_with_tag(EdgeTag.OUTER_C).size == 12
        assert small_mesh.edges_with_tag(EdgeTag.OUTLET).size == 0

    def test_interface_neighbours(self, small_mesh: Mesh) -> None:
        """Should record one porous and one conduit cell per interface edge."""
        edges = small_mesh.edges_with_tag(EdgeTag.INTERFACE)
        assert np.all(small_mesh.edge_porous_cell[edges] >= 0)
        assert np.all(small_mesh.edge_conduit_cell[edges] >= 0)
        assert np.allclose(small_mesh.edge_midpoints(edges)[:, 1], 1.0)

    def test_ccw_and_area(self, small_mesh: Mesh) -> None:
        """Should orient every triangle counter-clockwise and cover both squares."""
        assert np.all(small_mesh.cell_areas() > 0)
        assert small_mesh.region_area(Region.POROUS) == pytest.approx(1.0)
        assert small_mesh.region_area(Region.CONDUIT) == pytest.approx(1.0)

    def test_non_divisible(self) -> None:
        """Should raise NonDivisibleStep when h does not tile the sides."""
        with pytest.raises(NonDivisibleStep):
            build_rect_mesh(example1_domain(), 0.3)


class TestRefinement:
    """Tests for refine_uniform and refinement_levels."""

    def test_refinement_matches_direct_mesh(self, coarse_mesh: Mesh, small_mesh: Mesh) -> None:
        """Should reproduce the vertex set and tags of the mesh built at h/2."""
        fine = refine_uniform(coarse_mesh, 1)
        assert fine.n_cells == 4 * coarse_mesh.n_cells
        assert fine.h == pytest.approx(0.25)
        assert fine.n_vertices == small_mesh.n_vertices
        for tag in EdgeTag:
            assert fine.edges_with_tag(tag).size == small_mesh.edges_with_tag(tag).size

    def test_coarse_vertices_keep_indices(self, coarse_mesh: Mesh) -> None:
        """Should keep every coarse vertex at its index."""
        fine = refine_uniform(coarse_mesh, 2)
        assert np.array_equal(fine.vertices[: coarse_mesh.n_vertices], coarse_mesh.vertices)
        assert fine.parent_mesh is coarse_mesh

    def test_parent_contains_children(self, coarse_mesh: Mesh) -> None:
        """Should map each fine cell into a coarse cell of the same region."""
        fine = refine_uniform(coarse_mesh, 2)
        assert np.array_equal(fine.cell_region, coarse_mesh.cell_region[fine.parent])
        areas = np.bincount(fine.parent, weights=fine.cell_areas())
        assert np.allclose(areas, coarse_mesh.cell_areas())

    def test_levels(self) -> None:
        """Should count halvings between two sizes."""
        assert refinement_levels(0.5, 0.125) == 2
        assert refinement_levels(0.25, 0.25) == 0
        with pytest.raises(NonDivisibleStep):
            refinement_levels(1.0 / 3.0, 1.0 / 9.0)

    def test_invalid_levels(self, coarse_mesh: Mesh) -> None:
        """Should require at least one level."""
        with pytest.raises(ValueError):
            refine_uniform(coarse_mesh, 0)


class TestEmbeddedMesh:
    """Tests for build_embedded_mesh."""

    def test_conduit_inside_square(self) -> None:
        """Should tag inner cells as conduit with all inner edges INTERFACE."""
        mesh = build_embedded_mesh((0.0, 0.0, 4.0, 4.0), (1.0, 1.0, 3.0, 2.0), 0.5)
        assert mesh.region_area(Region.CONDUIT) == pytest.approx(2.0)
        assert mesh.edges_with_tag(EdgeTag.INTERFACE).size == 12
        assert mesh.edges_with_tag(EdgeTag.OUTER_P).size == 32
        assert mesh.edges_with_tag(EdgeTag.OUTER_C).size == 0
