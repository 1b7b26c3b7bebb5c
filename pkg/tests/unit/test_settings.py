"""
Unit tests for process-level settings.
"""

import pytest
from pydantic import ValidationError

from src.app.config import Settings, validate_settings


def test_defaults():
    current = Settings(_env_file=None)
    assert current.OUTPUT_DIR == "runs"
    assert current.SWEEP_WORKERS == 1
    assert current.LOG_LEVEL == "INFO"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("LOG_LEVEL", "debug")
    monkeypatch.setenv("SWEEP_WORKERS", "4")
    current = Settings(_env_file=None)
    assert current.LOG_LEVEL == "DEBUG"
    assert current.SWEEP_WORKERS == 4


@pytest.mark.parametrize("name, value", [("LOG_LEVEL", "LOUD"), ("SWEEP_WORKERS", "-1")])
def test_invalid_values(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValidationError):
        Settings(_env_file=None)


def test_validate_settings():
    status = validate_settings(Settings(_env_file=None))
    assert status == {"valid": True, "missing": [], "warnings": []}

    status = validate_settings(Settings(_env_file=None, OUTPUT_DIR="", PROGRESS_INTERVAL=0))
    assert not status["valid"]
    assert status["missing"] == ["OUTPUT_DIR"]
    assert len(status["warnings"]) == 1
