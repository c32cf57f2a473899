"""Utility helpers."""

from .helpers import ensure_dir, format_seconds, safe_filename

__all__ = ["ensure_dir", "format_seconds", "safe_filename"]
