"""CSV tables of convergence sweeps and production-rate curves."""

import csv
from pathlib import Path
from typing import List, Optional, Union

from loguru import logger

from fracflow.errors import IoError
from fracflow.mms import ERROR_COLUMNS, ErrorRow, ErrorTable
from fracflow.twogrid import Algorithm
from fracflow.wellbore import RateCurve, RatePoint

ERROR_HEADER = [
    "h",
    "H",
    "dt",
    "uc_h1",
    "uc_rate",
    "pF_h1",
    "pF_rate",
    "pf_l2",
    "pf_l2_rate",
    "pf_h1",
    "pf_h1_rate",
    "pm_l2",
    "pm_l2_rate",
    "pm_h1",
    "pm_h1_rate",
    "cpu_s",
]

# error column -> its rate column
RATE_COLUMNS = {
    "uc_h1": "uc_rate",
    "pF_h1": "pF_rate",
    "pf_l2": "pf_l2_rate",
    "pf_h1": "pf_h1_rate",
    "pm_l2": "pm_l2_rate",
    "pm_h1": "pm_h1_rate",
}

RATE_HEADER = ["k_F", "Q", "algorithm", "wall_s"]


def format_number(value: Optional[float]) -> str:
    """Six significant digits; empty for undefined values."""
    return "" if value is None else f"{value:.6g}"


def _error_lines(table: ErrorTable) -> List[List[str]]:
    rates = {column: table.rates(column) for column in ERROR_COLUMNS}
    lines = [ERROR_HEADER]
    for i, row in enumerate(table.rows):
        cells = {"h": row.h, "H": row.H, "dt": row.dt, "cpu_s": row.cpu_s}
        for column, rate_column in RATE_COLUMNS.items():
            cells[column] = row.errors[column]
            cells[rate_column] = rates[column][i]
        lines.append([format_number(cells[name]) for name in ERROR_HEADER])
    return lines


def _rate_lines(curve: RateCurve) -> List[List[str]]:
    lines = [RATE_HEADER]
    for p in curve.points:
        q, wall = format_number(p.Q), format_number(p.wall_s)
        lines.append([format_number(p.k_F), q, curve.algorithm.value, wall])
    return lines


def write_csv(table: Union[ErrorTable, RateCurve], path: Path) -> Path:
    """Write an error table or a rate curve.

    Raises:
        IoError: The file cannot be written.
    """
    path = Path(path)
    lines = _rate_lines(table) if isinstance(table, RateCurve) else _error_lines(table)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as f:
            csv.writer(f, lineterminator="\n").writerows(lines)
    except OSError as e:
        raise IoError(f"Cannot write {path}: {e.strerror or e}") from e
    logger.info(f"Wrote {len(lines) - 1} rows to {path}")
    return path


def _read_rows(path: Path, header: List[str]) -> List[dict]:
    try:
        with Path(path).open(newline="", encoding="utf-8") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames != header:
                raise IoError(f"{path}: unexpected header {reader.fieldnames}")
            return list(reader)
    except OSError as e:
        raise IoError(f"Cannot read {path}: {e.strerror or e}") from e


def read_error_table(path: Path, algorithm: Algorithm = Algorithm.TRADITIONAL) -> ErrorTable:
    """Errors, sizes and timings of a written table; rates are recomputed."""
    rows = [
        ErrorRow(
            h=float(r["h"]),
            H=float(r["H"]),
            dt=float(r["dt"]),
            errors={column: float(r[column]) for column in ERROR_COLUMNS},
            cpu_s=float(r["cpu_s"]),
        )
        for r in _read_rows(path, ERROR_HEADER)
    ]
    return ErrorTable(rows=rows, algorithm=algorithm)


def read_rate_curve(path: Path) -> RateCurve:
    rows = _read_rows(path, RATE_HEADER)
    algorithm = Algorithm(rows[0]["algorithm"]) if rows else Algorithm.TRADITIONAL
    points = tuple(
        RatePoint(k_F=float(r["k_F"]), Q=float(r["Q"]), wall_s=float(r["wall_s"])) for r in rows
    )
    return RateCurve(points=points, algorithm=algorithm)
