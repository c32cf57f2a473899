"""Tests for subdomain partitions."""

import numpy as np
import pytest

from fracflow.errors import MisalignedLayout
from fracflow.mesh import (
    EdgeTag,
    Mesh,
    Region,
    SubdomainLayout,
    build_rect_mesh,
    example1_domain,
    partition_subdomains,
)


@pytest.fixture(scope="module")
def fine_mesh() -> Mesh:
    return build_rect_mesh(example1_domain(), 0.125)


class TestSubdomainLayout:
    """Tests for SubdomainLayout validation."""

    def test_defaults(self) -> None:
        """Should default to 2 x 2 per region with overlap 1/4."""
        layout = SubdomainLayout()
        assert layout.counts_for(Region.POROUS) == (2, 2)
        assert layout.counts_for(Region.CONDUIT) == (2, 2)
        assert layout.overlap == 0.25

    def test_separate_conduit_counts(self) -> None:
        """Should use conduit counts for the conduit region only."""
        layout = SubdomainLayout(counts=(2, 2), conduit_counts=(1, 1))
        assert layout.counts_for(Region.CONDUIT) == (1, 1)
        assert layout.counts_for(Region.POROUS) == (2, 2)

    def test_invalid(self) -> None:
        """Should reject zero counts and negative overlap."""
        with pytest.raises(ValueError):
            SubdomainLayout(counts=(0, 2))
        with pytest.raises(ValueError):
            SubdomainLayout(overlap=-0.1)


class TestPartitionSubdomains:
    """Tests for partition_subdomains."""

    def test_porous_first(self, fine_mesh: Mesh) -> None:
        """Should list four porous then four conduit subdomains."""
        decomposition = partition_subdomains(fine_mesh, SubdomainLayout())
        regions = [s.region for s in decomposition.subdomains]
        assert regions == [Region.POROUS] * 4 + [Region.CONDUIT] * 4
        assert [s.index for s in decomposition.subdomains] == list(range(8))

    def test_owners_cover_every_cell(self, fine_mesh: Mesh) -> None:
        """Should give every cell exactly one owning subdomain."""
        decomposition = partition_subdomains(fine_mesh, SubdomainLayout())
        assert np.all(decomposition.owner >= 0)
        owned = np.concatenate([s.owned for s in decomposition.subdomains])
        assert np.array_equal(np.sort(owned), np.arange(fine_mesh.n_cells))

    def test_extension_clipped(self, fine_mesh: Mesh) -> None:
        """Should extend by the overlap and clip at the region box."""
        decomposition = partition_subdomains(fine_mesh, SubdomainLayout())
        first = decomposition.subdomains[0]
        assert first.disjoint == pytest.approx((0.0, 0.0, 0.5, 0.5))
        assert first.extended == pytest.approx((0.0, 0.0, 0.75, 0.75))
        assert first.cells.size == 2 * 36
        assert np.isin(first.owned, first.cells).all()

    def test_interface_edges(self, fine_mesh: Mesh) -> None:
        """Should attach interface edges to subdomains touching y = 1."""
        decomposition = partition_subdomains(fine_mesh, SubdomainLayout())
        interface = set(fine_mesh.edges_with_tag(EdgeTag.INTERFACE).tolist())
        bottom_porous = decomposition.subdomains[0]
        top_porous = decomposition.subdomains[2]
        assert bottom_porous.interface_edges.size == 0
        assert set(top_porous.interface_edges.tolist()) <= interface
        assert top_porous.interface_edges.size == 6

    def test_zero_overlap(self, fine_mesh: Mesh) -> None:
        """Should make extended and disjoint rectangles equal without overlap."""
        decomposition = partition_subdomains(fine_mesh, SubdomainLayout(overlap=0.0))
        for s in decomposition.subdomains:
            assert s.extended == s.disjoint
            assert np.array_equal(np.sort(s.cells), np.sort(s.owned))

    def test_misaligned(self, fine_mesh: Mesh) -> None:
        """Should raise MisalignedLayout when sides fall between mesh lines."""
        with pytest.raises(MisalignedLayout):
            partition_subdomains(fine_mesh, SubdomainLayout(counts=(3, 2), overlap=0.25))
