"""
Loading SimConfig documents from JSON files.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import ValidationError

from ..models.errors import InvalidConfigError
from ..models.simulation import SimConfig

logger = logging.getLogger(__name__)


def parse_config(data: Dict[str, Any], overrides: Optional[Dict[str, Any]] = None) -> SimConfig:
    """
    Validate a config mapping, applying overrides on top.

    Overrides whose value is None are ignored.

    Raises:
        InvalidConfigError: If the document is not a valid SimConfig
    """
    if not isinstance(data, dict):
        raise InvalidConfigError("Config document must be a JSON object")
    merged = dict(data)
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    try:
        return SimConfig.model_validate(merged)
    except ValidationError as exc:
        raise InvalidConfigError(f"Invalid config: {exc}") from exc


def load_config(path: Union[str, Path], overrides: Optional[Dict[str, Any]] = None) -> SimConfig:
    """
    Read a SimConfig from a JSON file.

    Raises:
        InvalidConfigError: If the file is missing, not JSON or not a valid config
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InvalidConfigError(f"Config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidConfigError(f"Config file {path} is not valid JSON: {exc}") from exc
    config = parse_config(data, overrides)
    logger.debug(f"Loaded config from {path}: {config.model_dump(mode='json')}")
    return config


def load_config_dir(directory: Union[str, Path],
                    overrides: Optional[Dict[str, Any]] = None) -> List[SimConfig]:
    """
    Read every ``*.json`` config of a directory, sorted by file name.

    Raises:
        InvalidConfigError: If the directory is missing or any file is invalid
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise InvalidConfigError(f"Config directory not found: {directory}")
    return [load_config(path, overrides) for path in sorted(directory.glob("*.json"))]
