"""fracflow CLI."""

from fracflow.cli.application import FracflowCLI, app, main

__all__ = [
    "FracflowCLI",
    "app",
    "main",
]
