"""Run summaries written next to the CSV and VTK outputs."""

from pathlib import Path
from typing import Any, Dict, Iterable, Optional

import numpy as np
import yaml
from loguru import logger

from fracflow.errors import IoError
from fracflow.stepping import ConduitStepInfo

SUMMARY_FILE = "summary.yaml"


def picard_statistics(history: Iterable[ConduitStepInfo]) -> Dict[str, Any]:
    """Iteration counts and convergence flags of a march."""
    history = list(history)
    if not history:
        return {"steps": 0}
    iterations = np.array([info.iterations for info in history])
    return {
        "steps": len(history),
        "iterations_mean": float(iterations.mean()),
        "iterations_max": int(iterations.max()),
        "not_converged": sum(1 for info in history if not info.converged),
        "last_increment": float(history[-1].increment),
    }


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    return value


def write_summary(
    output_dir: Path,
    command: str,
    config_text: str,
    results: Dict[str, Any],
    name: Optional[str] = None,
) -> Path:
    """Write ``summary.yaml`` with the config echo and run results.

    Raises:
        IoError: The file cannot be written.
    """
    path = Path(output_dir) / (name or SUMMARY_FILE)
    document = {"command": command, "config": config_text, "results": _plain(results)}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(yaml.safe_dump(document, sort_keys=False), encoding="utf-8")
    except OSError as e:
        raise IoError(f"Cannot write {path}: {e.strerror or e}") from e
    logger.info(f"Wrote summary to {path}")
    return path


def read_summary(path: Path) -> Dict[str, Any]:
    try:
        return yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    except OSError as e:
        raise IoError(f"Cannot read {path}: {e.strerror or e}") from e
