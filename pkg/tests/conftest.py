import os
import sys

import numpy as np
import pytest

# Add the project root to the path so `src` imports resolve without installation
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.models.simulation import ActionSpace, SimConfig  # noqa: E402
from src.nn.network import QNetworkPair  # noqa: E402


def pytest_collection_modifyitems(config, items):
    """Skip long acceptance runs unless RUN_SLOW=1."""
    if os.environ.get("RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="long training run; set RUN_SLOW=1 to enable")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def small_config():
    """A MeanField config small enough to train in well under a second."""
    return SimConfig(
        n_devices=4,
        n_channels=20,
        n_neighbors=2,
        batch_size=4,
        buffer_capacity=50,
        iterations=30,
        hidden_units=8,
        window=10,
        seed=3,
    )


@pytest.fixture
def full_space():
    return ActionSpace(lo=0, hi=9)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def mf_pair():
    """Small MeanField-shaped network pair."""
    return QNetworkPair.create([20, 16, 16, 10], seed_1=11, seed_2=12)


@pytest.fixture
def idql_pair():
    return QNetworkPair.create([10, 16, 16, 10], seed_1=21, seed_2=22)
