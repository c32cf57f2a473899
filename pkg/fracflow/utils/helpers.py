"""Utility functions for fracflow."""

from pathlib import Path


def ensure_dir(path: Path) -> Path:
    """Ensure a directory exists, creating it if necessary."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def safe_filename(name: str) -> str:
    """Convert a string to a safe filename."""
    unsafe = '<>:"/\\|?* ='
    for char in unsafe:
        name = name.replace(char, "_")
    return name.strip()


def format_seconds(seconds: float) -> str:
    """Human-readable duration, e.g. ``1m 05.2s``."""
    if seconds < 60:
        return f"{seconds:.2f}s"
    minutes, rest = divmod(seconds, 60)
    return f"{int(minutes)}m {rest:04.1f}s"
