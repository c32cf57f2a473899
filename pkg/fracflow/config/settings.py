from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-level settings read from ``FRACFLOW_*`` variables or ``.env``."""

    # Parallel subdomain and porous solves
    WORKERS: int = Field(1, ge=1)

    # Outputs (CSV, VTK, summary.yaml)
    OUTPUT_DIR: Path = Path("./output")

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[Path] = None

    model_config = SettingsConfigDict(
        env_prefix="FRACFLOW_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )


settings = Settings()
