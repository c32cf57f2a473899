"""Shared pytest fixtures for fracflow tests."""

from tempfile import TemporaryDirectory
from typing import Any, Generator

import pytest

from fracflow.elements import Spaces, build_spaces
from fracflow.mesh import Mesh, build_rect_mesh, example1_domain
from fracflow.mms import ManufacturedCase, example1_case


@pytest.fixture
def temp_workspace() -> Generator[str, Any, Any]:
    """Create a temporary workspace directory."""
    with TemporaryDirectory() as tmp:
        yield tmp


@pytest.fixture(scope="session")
def coarse_mesh() -> Mesh:
    """Example 1 mesh at h = 1/2."""
    return build_rect_mesh(example1_domain(), 0.5)


@pytest.fixture(scope="session")
def small_mesh() -> Mesh:
    """Example 1 mesh at h = 1/4."""
    return build_rect_mesh(example1_domain(), 0.25)


@pytest.fixture(scope="session")
def small_spaces(small_mesh: Mesh) -> Spaces:
    """Dof maps of the h = 1/4 mesh."""
    return build_spaces(small_mesh)


@pytest.fixture(scope="session")
def example1() -> ManufacturedCase:
    """Manufactured Example 1 case with all parameters equal to one."""
    return example1_case()


@pytest.fixture(scope="session")
def example1_stokes() -> ManufacturedCase:
    """Manufactured Example 1 case without convection."""
    return example1_case(convection=False)
