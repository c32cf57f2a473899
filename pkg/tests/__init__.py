"""fracflow tests package."""
