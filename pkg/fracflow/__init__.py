"""fracflow: transient triple-porosity / free-flow coupling with two-grid local parallel stepping."""

__version__ = "0.1.0"
