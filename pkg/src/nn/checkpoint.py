"""
JSON checkpoints for networks.

Floats are written with Python's shortest round-trip representation, so a
saved network reloads bit for bit.
"""

import json
import logging
from pathlib import Path
from typing import Union

from .network import QNetwork, QNetworkPair

logger = logging.getLogger(__name__)


def save_network(net: QNetwork, path: Union[str, Path]) -> Path:
    """Write one network as ``{dims, weights, biases}``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(net.to_dict()), encoding="utf-8")
    return path


def load_network(path: Union[str, Path]) -> QNetwork:
    """Read a network written by save_network."""
    return QNetwork.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def save_pair(pair: QNetworkPair, path: Union[str, Path]) -> Path:
    """Write the four networks of an agent into one file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(pair.to_dict()), encoding="utf-8")
    logger.debug(f"Saved network pair to {path}")
    return path


def load_pair(path: Union[str, Path]) -> QNetworkPair:
    """Read a network pair written by save_pair."""
    return QNetworkPair.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
