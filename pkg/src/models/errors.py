"""
Exception hierarchy for the bandwidth negotiation simulator.

Every error raised on purpose by the package derives from NegotiationError so
callers (the CLI in particular) can map failures to exit codes.
"""

from typing import Optional


class NegotiationError(Exception):
    """Base class for all simulator errors."""


class InvalidConfigError(NegotiationError, ValueError):
    """A run parameter or call argument is outside its permitted range."""


class ShapeError(NegotiationError, ValueError):
    """Array dimensions do not match the network architecture."""


class InvalidActionError(NegotiationError, ValueError):
    """A bandwidth request lies outside the global or per-device action set."""


class InvalidCallError(NegotiationError, ValueError):
    """An operation was invoked with arguments it cannot process (e.g. an empty batch)."""


class TrainingFault(NegotiationError, RuntimeError):
    """
    Non-finite values appeared in a gradient, a loss or a parameter.

    The harness fills in the iteration and device id before surfacing the fault.
    """

    def __init__(self, message: str, iteration: Optional[int] = None,
                 device_id: Optional[int] = None):
        self.message = message
        self.iteration = iteration
        self.device_id = device_id
        super().__init__(self.__str__())

    def __str__(self) -> str:
        where = []
        if self.iteration is not None:
            where.append(f"iteration={self.iteration}")
        if self.device_id is not None:
            where.append(f"device={self.device_id}")
        if where:
            return f"{self.message} ({', '.join(where)})"
        return self.message
