"""
Finite-difference verification of QNetwork.backward.
"""

from typing import Optional

import numpy as np

from .network import QNetwork

DEFAULT_STEP = 1e-5
# Scale used instead of |analytic| + |numeric| when both gradients are below it.
DENOMINATOR_FLOOR = 1e-5


def relative_error(analytic: float, numeric: float) -> float:
    """
    Symmetric relative error |a - n| / (|a| + |n|), with 0/0 defined as 0.

    When both |a| and |n| are below DENOMINATOR_FLOOR the difference is divided
    by the floor instead, so gradients that are zero up to rounding compare as
    equal. If either gradient reaches the floor the error is purely relative.
    """
    denom = abs(analytic) + abs(numeric)
    if denom == 0.0:
        return 0.0
    if abs(analytic) < DENOMINATOR_FLOOR and abs(numeric) < DENOMINATOR_FLOOR:
        return abs(analytic - numeric) / DENOMINATOR_FLOOR
    return abs(analytic - numeric) / denom


def gradient_check(net: QNetwork, x, upstream: Optional[np.ndarray] = None,
                   step: float = DEFAULT_STEP, seed: int = 0) -> float:
    """
    Compare backward() with central finite differences over all parameters.

    Each parameter is scored with relative_error, so near-zero gradient pairs
    are compared against DENOMINATOR_FLOOR rather than their own magnitude.

    The scalar checked is ``sum(upstream * forward(x))``; when no upstream
    vector is given a seeded standard normal one is drawn.

    Args:
        net: Network to check; parameters are restored afterwards
        x: Input vector or batch
        upstream: Derivative of the checked scalar w.r.t. the output
        step: Finite-difference step h
        seed: Seed for the default upstream vector

    Returns:
        Worst relative error across all parameters
    """
    out = net.forward(x)
    if upstream is None:
        upstream = np.random.default_rng(seed).standard_normal(np.shape(out))
    upstream = np.asarray(upstream, dtype=np.float64).reshape(np.shape(out))

    analytic = net.backward(x, upstream).arrays()

    def objective() -> float:
        return float(np.sum(upstream * net.forward(x)))

    worst = 0.0
    for param, grad in zip(net.parameters(), analytic):
        for idx in np.ndindex(param.shape):
            original = param[idx]
            param[idx] = original + step
            plus = objective()
            param[idx] = original - step
            minus = objective()
            param[idx] = original
            numeric = (plus - minus) / (2.0 * step)
            worst = max(worst, relative_error(float(grad[idx]), numeric))
    return worst
