"""Run configuration, CSV tables, VTK export and YAML summaries."""

from .csvio import (
    ERROR_HEADER,
    RATE_HEADER,
    format_number,
    read_error_table,
    read_rate_curve,
    write_csv,
)
from .runconfig import (
    ProblemKind,
    RunConfig,
    defaults_text,
    load_config,
    parse_config,
    serialize_config,
)
from .summary import picard_statistics, read_summary, write_summary
from .vtk import write_mesh_vtk, write_vtk

__all__ = [
    "ERROR_HEADER",
    "RATE_HEADER",
    "format_number",
    "read_error_table",
    "read_rate_curve",
    "write_csv",
    "ProblemKind",
    "RunConfig",
    "defaults_text",
    "load_config",
    "parse_config",
    "serialize_config",
    "picard_statistics",
    "read_summary",
    "write_summary",
    "write_mesh_vtk",
    "write_vtk",
]
