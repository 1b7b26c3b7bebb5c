from typing import Any, Dict, Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-level settings read from the environment or a .env file."""
    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True, extra="ignore")

    PROJECT_NAME: str = "Mean-Field Bandwidth Negotiation"
    VERSION: str = "1.0.0"

    # Output
    OUTPUT_DIR: str = "runs"

    # Execution
    SWEEP_WORKERS: int = 1
    PROGRESS_INTERVAL: int = 500

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    @field_validator("LOG_LEVEL")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in {"CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"}:
            raise ValueError(f"Unknown log level {v}")
        return level

    @field_validator("SWEEP_WORKERS", "PROGRESS_INTERVAL")
    @classmethod
    def non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("Must be non-negative")
        return v


settings = Settings()


def validate_settings(current: Optional[Settings] = None) -> Dict[str, Any]:
    """Validate that the settings are usable for experiment runs"""
    current = current or settings
    missing = []
    warnings = []

    if not current.OUTPUT_DIR:
        missing.append("OUTPUT_DIR")

    if current.SWEEP_WORKERS == 0:
        warnings.append("SWEEP_WORKERS is 0; sweeps will run sequentially")

    if current.PROGRESS_INTERVAL == 0:
        warnings.append("PROGRESS_INTERVAL is 0; progress logging disabled")

    return {
        "valid": len(missing) == 0,
        "missing": missing,
        "warnings": warnings,
    }
