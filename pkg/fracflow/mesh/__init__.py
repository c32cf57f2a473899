"""Structured two-region meshes, nested refinement and subdomain partitions."""

from .geometry import EdgeTag, Rect, RectDomain, Region, example1_domain, rect_area
from .partition import Decomposition, Subdomain, SubdomainLayout, partition_subdomains
from .triangulation import (
    Mesh,
    build_embedded_mesh,
    build_rect_mesh,
    build_region_mesh,
    refine_uniform,
    refinement_levels,
)

__all__ = [
    "EdgeTag",
    "Rect",
    "RectDomain",
    "Region",
    "example1_domain",
    "rect_area",
    "Decomposition",
    "Subdomain",
    "SubdomainLayout",
    "partition_subdomains",
    "Mesh",
    "build_embedded_mesh",
    "build_rect_mesh",
    "build_region_mesh",
    "refine_uniform",
    "refinement_levels",
]
