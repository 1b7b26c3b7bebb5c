"""
Feed-forward Q-network with manual backpropagation.

A QNetwork is a stack of affine layers with ReLU between them and a linear
output head. Inputs may be a single vector or a batch (rows are samples);
gradients of a batch are summed over its rows.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..models.errors import InvalidConfigError, ShapeError

logger = logging.getLogger(__name__)


def relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def relu_derivative(z: np.ndarray) -> np.ndarray:
    return (z > 0).astype(np.float64)


@dataclass
class Gradients:
    """Gradients of a scalar loss w.r.t. every weight matrix and bias vector."""
    weights: List[np.ndarray]
    biases: List[np.ndarray]

    def arrays(self) -> List[np.ndarray]:
        """Flat list of all gradient arrays, weights first then biases per layer."""
        out = []
        for w, b in zip(self.weights, self.biases):
            out.extend([w, b])
        return out

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(a)) for a in self.arrays())


class QNetwork:
    """
    Multi-layer perceptron mapping an input vector to one Q-value per action.

    Weight matrix ``weights[i]`` has shape (dims[i], dims[i + 1]) so a batch
    ``x`` of shape (B, dims[0]) is propagated as ``x @ W + b``.
    """

    def __init__(self, dims: Sequence[int], weights: List[np.ndarray],
                 biases: List[np.ndarray]):
        """
        Initialize the network from explicit parameters.

        Args:
            dims: Layer widths, input first
            weights: One matrix per layer
            biases: One vector per layer
        """
        self.dims = [int(d) for d in dims]
        self.weights = [np.asarray(w, dtype=np.float64) for w in weights]
        self.biases = [np.asarray(b, dtype=np.float64) for b in biases]
        self._check_shapes()

    def _check_shapes(self) -> None:
        if len(self.weights) != len(self.dims) - 1 or len(self.biases) != len(self.dims) - 1:
            raise ShapeError(f"Expected {len(self.dims) - 1} layers for dims {self.dims}")
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.shape != (self.dims[i], self.dims[i + 1]):
                raise ShapeError(
                    f"Layer {i} weight shape {w.shape} != {(self.dims[i], self.dims[i + 1])}"
                )
            if b.shape != (self.dims[i + 1],):
                raise ShapeError(f"Layer {i} bias shape {b.shape} != {(self.dims[i + 1],)}")

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    @property
    def input_dim(self) -> int:
        return self.dims[0]

    @property
    def output_dim(self) -> int:
        return self.dims[-1]

    def parameters(self) -> List[np.ndarray]:
        """Flat list of parameter arrays in the same order as Gradients.arrays()."""
        out = []
        for w, b in zip(self.weights, self.biases):
            out.extend([w, b])
        return out

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(p)) for p in self.parameters())

    def copy(self) -> "QNetwork":
        """Deep copy with identical parameters."""
        return QNetwork(self.dims, [w.copy() for w in self.weights],
                        [b.copy() for b in self.biases])

    def same_architecture(self, other: "QNetwork") -> bool:
        return self.dims == other.dims

    def _as_batch(self, x) -> Tuple[np.ndarray, bool]:
        x = np.asarray(x, dtype=np.float64)
        single = x.ndim == 1
        if single:
            x = x.reshape(1, -1)
        if x.ndim != 2 or x.shape[1] != self.input_dim:
            raise ShapeError(f"Input shape {x.shape} does not match input dim {self.input_dim}")
        return x, single

    def _forward_cache(
        self, x: np.ndarray
    ) -> Tuple[np.ndarray, List[np.ndarray], List[np.ndarray]]:
        # activations[i] is the input of layer i, pre[i] its affine output
        activations = [x]
        pre = []
        h = x
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = h @ w + b
            pre.append(z)
            h = z if i == self.n_layers - 1 else relu(z)
            if i < self.n_layers - 1:
                activations.append(h)
        return h, activations, pre

    def forward(self, x) -> np.ndarray:
        """
        Evaluate the network.

        Args:
            x: Input vector of length dims[0] or a (B, dims[0]) batch

        Returns:
            Q-values of length dims[-1], or a (B, dims[-1]) batch

        Raises:
            ShapeError: If the input width does not match
        """
        batch, single = self._as_batch(x)
        out, _, _ = self._forward_cache(batch)
        return out[0] if single else out

    def backward(self, x, d_output) -> Gradients:
        """
        Reverse-mode gradients of a scalar loss.

        Args:
            x: Input vector or batch used in the forward pass
            d_output: Derivative of the loss w.r.t. the network output, same
                leading shape as ``x``

        Returns:
            Gradients summed over the batch
        """
        batch, _ = self._as_batch(x)
        delta = np.asarray(d_output, dtype=np.float64).reshape(batch.shape[0], -1)
        if delta.shape[1] != self.output_dim:
            raise ShapeError(
                f"Output gradient shape {delta.shape} does not match output dim {self.output_dim}"
            )
        _, activations, pre = self._forward_cache(batch)

        grad_w: List[Optional[np.ndarray]] = [None] * self.n_layers
        grad_b: List[Optional[np.ndarray]] = [None] * self.n_layers
        for i in reversed(range(self.n_layers)):
            grad_w[i] = activations[i].T @ delta
            grad_b[i] = delta.sum(axis=0)
            if i > 0:
                delta = (delta @ self.weights[i].T) * relu_derivative(pre[i - 1])
        return Gradients(weights=grad_w, biases=grad_b)

    def to_dict(self) -> dict:
        """Plain-Python representation used for checkpoints."""
        return {
            "dims": list(self.dims),
            "weights": [w.tolist() for w in self.weights],
            "biases": [b.tolist() for b in self.biases],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QNetwork":
        dims = data["dims"]
        weights = [np.array(w, dtype=np.float64).reshape(dims[i], dims[i + 1])
                   for i, w in enumerate(data["weights"])]
        biases = [np.array(b, dtype=np.float64) for b in data["biases"]]
        return cls(dims, weights, biases)


def init_network(dims: Sequence[int], seed: int) -> QNetwork:
    """
    Create a network with seeded fan-in scaled uniform weights and zero biases.

    Weights of layer i are drawn from U(-1/sqrt(dims[i]), 1/sqrt(dims[i])).

    Raises:
        InvalidConfigError: If fewer than two dims are given or any dim is < 1
    """
    dims = list(dims)
    if len(dims) < 2 or any(int(d) < 1 for d in dims):
        raise InvalidConfigError(f"Network dims need at least two positive entries, got {dims}")
    rng = np.random.default_rng(seed)
    weights = []
    biases = []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        bound = 1.0 / np.sqrt(fan_in)
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return QNetwork(dims, weights, biases)


def soft_update_params(target: QNetwork, source: QNetwork, tau: float) -> QNetwork:
    """
    Polyak update of a target network in place: target <- tau*source + (1-tau)*target.

    Returns:
        The updated target network

    Raises:
        ShapeError: If the architectures differ
        InvalidConfigError: If tau is outside (0, 1]
    """
    if not target.same_architecture(source):
        raise ShapeError(f"Cannot soft-update {target.dims} from {source.dims}")
    if not 0.0 < tau <= 1.0:
        raise InvalidConfigError(f"Target rate must lie in (0, 1], got {tau}")
    for t, s in zip(target.parameters(), source.parameters()):
        if tau == 1.0:
            t[...] = s
        else:
            t += tau * (s - t)
    return target


class QNetworkPair:
    """
    Two evaluation networks and their two target networks.

    Targets start as exact copies of the evaluation networks.
    """

    def __init__(self, eval_1: QNetwork, eval_2: QNetwork,
                 target_1: Optional[QNetwork] = None, target_2: Optional[QNetwork] = None):
        if not eval_1.same_architecture(eval_2):
            raise ShapeError("Both evaluation networks must share one architecture")
        self.eval_1 = eval_1
        self.eval_2 = eval_2
        self.target_1 = target_1 if target_1 is not None else eval_1.copy()
        self.target_2 = target_2 if target_2 is not None else eval_2.copy()
        for net in (self.target_1, self.target_2):
            if not net.same_architecture(eval_1):
                raise ShapeError("Target networks must match the evaluation architecture")

    @classmethod
    def create(cls, dims: Sequence[int], seed_1: int, seed_2: int) -> "QNetworkPair":
        """Initialize both evaluation networks from independent seeds."""
        return cls(init_network(dims, seed_1), init_network(dims, seed_2))

    @property
    def dims(self) -> List[int]:
        return self.eval_1.dims

    def networks(self) -> List[QNetwork]:
        return [self.eval_1, self.eval_2, self.target_1, self.target_2]

    def soft_update_targets(self, tau: float) -> None:
        soft_update_params(self.target_1, self.eval_1, tau)
        soft_update_params(self.target_2, self.eval_2, tau)

    def to_dict(self) -> dict:
        return {
            "eval_1": self.eval_1.to_dict(),
            "eval_2": self.eval_2.to_dict(),
            "target_1": self.target_1.to_dict(),
            "target_2": self.target_2.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QNetworkPair":
        return cls(
            QNetwork.from_dict(data["eval_1"]),
            QNetwork.from_dict(data["eval_2"]),
            QNetwork.from_dict(data["target_1"]),
            QNetwork.from_dict(data["target_2"]),
        )
