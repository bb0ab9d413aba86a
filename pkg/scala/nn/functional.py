"""Forward/backward pairs for the handful of ops the model needs.

Backward functions take the forward inputs plus the upstream gradient, return the
gradient w.r.t. the input and accumulate parameter gradients in place.
"""

from __future__ import annotations

import numpy as np
from scipy.special import expit

from ..constants.nn import PROB_CLAMP
from .parameter import Parameter

__all__ = ("bce", "bce_backward", "prelu", "prelu_backward", "sigmoid", "sigmoid_backward")


def prelu(x: np.ndarray, slope: Parameter) -> np.ndarray:
    """x where x > 0, slope * x elsewhere (the slope branch owns x == 0)."""
    return np.where(x > 0, x, slope.value * x)


def prelu_backward(x: np.ndarray, slope: Parameter, grad_out: np.ndarray) -> np.ndarray:
    positive = x > 0
    slope.accumulate(np.sum(np.where(positive, 0.0, x * grad_out)))
    return np.where(positive, grad_out, slope.value * grad_out)


def sigmoid(x: np.ndarray) -> np.ndarray:
    return expit(x)


def sigmoid_backward(y: np.ndarray, grad_out: np.ndarray) -> np.ndarray:
    """Gradient through a sigmoid given its output ``y``."""
    return grad_out * y * (1.0 - y)


def _clamp(p: np.ndarray) -> np.ndarray:
    return np.clip(p, PROB_CLAMP, 1.0 - PROB_CLAMP)


def bce(pos: np.ndarray, neg: np.ndarray) -> float:
    """Batch mean of -1/2 (log s+ + log(1 - s-)) with probabilities clamped away from 0 and 1."""
    pos = _clamp(np.asarray(pos, dtype=np.float64))
    neg = _clamp(np.asarray(neg, dtype=np.float64))
    return float(np.mean(-0.5 * (np.log(pos) + np.log1p(-neg))))


def bce_backward(pos: np.ndarray, neg: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gradients of :func:`bce` w.r.t. the unclamped scores; zero where the clamp is active."""
    pos = np.asarray(pos, dtype=np.float64)
    neg = np.asarray(neg, dtype=np.float64)
    scale = 0.5 / pos.shape[0]
    pos_free = (pos > PROB_CLAMP) & (pos < 1.0 - PROB_CLAMP)
    neg_free = (neg > PROB_CLAMP) & (neg < 1.0 - PROB_CLAMP)
    d_pos = np.where(pos_free, -scale / np.where(pos_free, pos, 1.0), 0.0)
    d_neg = np.where(neg_free, scale / np.where(neg_free, 1.0 - neg, 1.0), 0.0)
    return d_pos, d_neg
