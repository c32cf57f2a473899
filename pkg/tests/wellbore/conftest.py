"""Wellbore fixtures on coarse meshes."""

from dataclasses import replace

import pytest

from fracflow.elements import Spaces, build_spaces
from fracflow.wellbore import WellboreConfig, WellboreSetup, build_wellbore_problem


@pytest.fixture
def quick_config() -> WellboreConfig:
    """Two steps on the coarse mesh."""
    return replace(WellboreConfig(), h=1.0 / 3.0, T=0.1)


@pytest.fixture(scope="module")
def coarse_setup() -> WellboreSetup:
    """Default geometry meshed at h = 1/3."""
    return build_wellbore_problem(WellboreConfig(), 1.0 / 3.0)


@pytest.fixture(scope="module")
def coarse_spaces(coarse_setup: WellboreSetup) -> Spaces:
    return build_spaces(coarse_setup.mesh)
