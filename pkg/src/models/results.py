"""
Result models for negotiation rounds and experiment runs.

This module provides Pydantic models for the AP channel allocation, the
per-iteration metrics recorded by the harness and the complete result of a run.
"""

import math
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .simulation import SimConfig


class Allocation(BaseModel):
    """
    Subchannel assignment broadcast by the AP after negotiation.

    Ranges are half-open ``(start, stop)`` pairs over ``[0, C)``. An infeasible
    round carries ``feasible=False`` and no assignment at all.
    """
    model_config = ConfigDict(frozen=True)

    n_channels: int = Field(..., ge=1)
    feasible: bool
    assignment: Dict[int, Tuple[int, int]] = {}

    @model_validator(mode='after')
    def validate_ranges(self):
        """Validate that ranges are disjoint and lie inside the data channel."""
        if not self.feasible:
            if self.assignment:
                raise ValueError("An infeasible allocation cannot assign subchannels")
            return self
        ranges = sorted(self.assignment.values())
        previous_stop = 0
        for start, stop in ranges:
            if start < previous_stop or stop < start:
                raise ValueError(f"Overlapping or inverted range [{start}, {stop})")
            previous_stop = stop
        if previous_stop > self.n_channels:
            raise ValueError(f"Allocation exceeds {self.n_channels} subchannels")
        return self

    @property
    def total_assigned(self) -> int:
        """Number of subchannels handed out."""
        return sum(stop - start for start, stop in self.assignment.values())


class IterationMetrics(BaseModel):
    """Metrics recorded once per training iteration."""
    iteration: int = Field(..., ge=0)
    mean_loss: Optional[float] = None
    utilization: float = Field(..., ge=0.0, le=1.0)
    feasible: bool
    population_mean_action: float = Field(..., ge=0.0)
    epsilon: float = Field(..., ge=0.0, le=1.0)


class WindowSummary(BaseModel):
    """
    Statistics over the final window of a run.

    ``action_variance`` is the population variance of the per-iteration
    population_mean_action values inside the window.
    """
    window: int
    mean_utilization: float
    infeasible_fraction: float
    action_variance: float
    mean_request: float
    loss_head: Optional[float] = None
    loss_tail: Optional[float] = None


class RunResult(BaseModel):
    """Complete outcome of one experiment run."""
    config: SimConfig
    metrics: List[IterationMetrics] = []
    summary: Optional[WindowSummary] = None
    final_requests: List[int] = []
    final_allocation: Optional[Allocation] = None
    action_trace: Optional[List[List[int]]] = None
    status: str = "ok"
    error: Optional[str] = None

    @property
    def succeeded(self) -> bool:
        """Whether the run finished without a fault."""
        return self.status == "ok"

    def mean_losses(self) -> List[float]:
        """Per-iteration mean losses of iterations in which some agent trained."""
        return [
            m.mean_loss for m in self.metrics
            if m.mean_loss is not None and not math.isnan(m.mean_loss)
        ]
