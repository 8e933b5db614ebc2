"""Application configuration."""
from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Workbench settings loaded from environment variables."""

    # Application
    APP_NAME: str = "simplycolored"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_JSON: bool = False

    # Definition files
    DEFAULT_FIELD: str = "Q"

    # Exhaustive search caps
    MAX_BRUTE_FORCE_DIM: int = 9
    MAX_UNIVERSAL_DIM: int = 8
    MAX_FILTRATION_STEPS: int = 256

    # Reports
    OUTPUT_DIR: Optional[Path] = None

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="SIMPLYCOLORED_",
        case_sensitive=True,
        extra="allow"
    )


@lru_cache()
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
