"""
Simulation models shared by every part of the negotiation simulator.

This module provides the device identity type, per-device action spaces, the
neighbor topology and the run configuration. All models are frozen after
construction so they can be shared freely between agents and workers.
"""

from enum import Enum
from typing import Dict, List, NewType, Optional

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

DeviceId = NewType("DeviceId", int)

# Global action index set {0, ..., 9}: number of requested subchannels.
NUM_ACTIONS = 10
MAX_ACTION = NUM_ACTIONS - 1


class Algorithm(str, Enum):
    """Learning algorithm driving every device."""
    MEAN_FIELD = "MeanField"
    IDQL = "IDQL"


class ActionMode(str, Enum):
    """How per-device action spaces are drawn."""
    FULL = "Full"
    HETEROGENEOUS = "Heterogeneous"


class ActionSpace(BaseModel):
    """
    Contiguous range of subchannel counts a device may request.

    Both bounds are inclusive and lie inside the global action set.
    """
    model_config = ConfigDict(frozen=True)

    lo: int = Field(0, ge=0, le=MAX_ACTION)
    hi: int = Field(MAX_ACTION, ge=0, le=MAX_ACTION)

    @model_validator(mode='after')
    def validate_bounds(self):
        """Validate that the range is not empty."""
        if self.lo > self.hi:
            raise ValueError(f"Action space lower bound {self.lo} exceeds upper bound {self.hi}")
        return self

    @property
    def size(self) -> int:
        """Number of admissible actions."""
        return self.hi - self.lo + 1

    def contains(self, action: int) -> bool:
        """Check whether a request is admissible for this device."""
        return self.lo <= action <= self.hi

    def mask(self) -> np.ndarray:
        """Boolean mask over the global action set, True for admissible actions."""
        mask = np.zeros(NUM_ACTIONS, dtype=bool)
        mask[self.lo:self.hi + 1] = True
        return mask


class NeighborGraph(BaseModel):
    """
    Neighbor sets N(j) over device indices.

    The adjacency maps each device id to the ordered list of devices whose
    requests it observes.
    """
    model_config = ConfigDict(frozen=True)

    n_devices: int = Field(..., ge=1)
    n_neighbors: int = Field(..., ge=0)
    adjacency: Dict[int, List[int]]

    @model_validator(mode='after')
    def validate_adjacency(self):
        """Validate ids, self-exclusion and uniform degree."""
        if sorted(self.adjacency) != list(range(self.n_devices)):
            raise ValueError("Adjacency must contain exactly one entry per device")
        for device, neighbors in self.adjacency.items():
            if device in neighbors:
                raise ValueError(f"Device {device} lists itself as a neighbor")
            if len(neighbors) != self.n_neighbors:
                raise ValueError(
                    f"Device {device} has {len(neighbors)} neighbors, expected {self.n_neighbors}"
                )
            if len(set(neighbors)) != len(neighbors):
                raise ValueError(f"Device {device} has duplicate neighbors")
            if any(n < 0 or n >= self.n_devices for n in neighbors):
                raise ValueError(f"Device {device} references an unknown neighbor")
        return self

    def neighbors(self, device: int) -> List[int]:
        """Get the neighbor list of a device."""
        return self.adjacency[device]

    def neighbor_matrix(self) -> np.ndarray:
        """N x k integer array whose row j holds N(j)."""
        return np.array(
            [self.adjacency[j] for j in range(self.n_devices)], dtype=np.int64
        ).reshape(self.n_devices, self.n_neighbors)

    def is_symmetric(self) -> bool:
        """Check whether i in N(j) implies j in N(i)."""
        sets = {j: set(n) for j, n in self.adjacency.items()}
        return all(j in sets[i] for j, ns in sets.items() for i in ns)

    def to_networkx(self) -> nx.DiGraph:
        """Directed graph with an edge j -> i for every i in N(j)."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n_devices))
        graph.add_edges_from(
            (j, i) for j, neighbors in self.adjacency.items() for i in neighbors
        )
        return graph


class SimConfig(BaseModel):
    """
    Every parameter of one simulation run.

    Field names double as the JSON keys of a config file; unknown keys are
    rejected.
    """
    model_config = ConfigDict(frozen=True, extra='forbid', use_enum_values=False)

    n_devices: int = Field(60, ge=1)
    n_channels: int = Field(500, ge=1)
    n_neighbors: int = Field(10, ge=0)
    smoothing: float = Field(0.9, ge=0.0, lt=1.0)
    discount: float = Field(0.5, gt=0.0, lt=1.0)
    epsilon_start: float = Field(0.9, ge=0.0, le=1.0)
    epsilon_end: float = Field(0.0, ge=0.0, le=1.0)
    # Iterations over which epsilon anneals; iterations - window when None.
    epsilon_decay_iterations: Optional[int] = Field(None, ge=0)
    learning_rate: float = Field(0.001, gt=0.0)
    target_rate: float = Field(0.01, gt=0.0, le=1.0)
    batch_size: int = Field(32, ge=1)
    buffer_capacity: int = Field(1000, ge=1)
    iterations: int = Field(5000, ge=1)
    seed: int = Field(1, ge=0, lt=2 ** 64)
    algorithm: Algorithm = Algorithm.MEAN_FIELD
    action_mode: ActionMode = ActionMode.FULL
    hidden_units: int = Field(64, ge=1)
    window: int = Field(500, ge=1)

    @field_validator('algorithm', mode='before')
    @classmethod
    def parse_algorithm(cls, v):
        """Accept the CLI short names 'mf' and 'idql'."""
        if isinstance(v, str):
            aliases = {"mf": Algorithm.MEAN_FIELD, "idql": Algorithm.IDQL}
            return aliases.get(v.lower(), v)
        return v

    @model_validator(mode='after')
    def validate_relations(self):
        """Validate constraints that span several fields."""
        if self.n_neighbors > self.n_devices - 1:
            raise ValueError(
                f"n_neighbors={self.n_neighbors} must be at most n_devices-1={self.n_devices - 1}"
            )
        if self.epsilon_end > self.epsilon_start:
            raise ValueError("epsilon_end cannot exceed epsilon_start")
        if self.batch_size > self.buffer_capacity:
            raise ValueError("batch_size cannot exceed buffer_capacity")
        return self

    @property
    def exploration_iterations(self) -> int:
        """Iteration at which epsilon reaches epsilon_end."""
        if self.epsilon_decay_iterations is not None:
            return self.epsilon_decay_iterations
        if self.iterations > self.window:
            return self.iterations - self.window
        return self.iterations - 1

    @property
    def input_dim(self) -> int:
        """Q-network input width: observation, plus mean action for MeanField."""
        if self.algorithm == Algorithm.IDQL:
            return NUM_ACTIONS
        return 2 * NUM_ACTIONS

    @property
    def network_dims(self) -> List[int]:
        """Layer widths of every Q-network in the run."""
        return [self.input_dim, self.hidden_units, self.hidden_units, NUM_ACTIONS]
