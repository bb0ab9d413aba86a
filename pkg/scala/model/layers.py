"""Encoders, readouts, discriminator and loss, each with its backward.

All functions accept any number of leading batch axes.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError, ShapeMismatchError
from ..models import ViewScores
from ..nn import Parameter, bce, bce_backward, prelu, prelu_backward, sigmoid, sigmoid_backward

__all__ = (
    "attention_gate",
    "batch_loss",
    "batch_loss_backward",
    "discriminate",
    "discriminate_backward",
    "embed_subgraph",
    "embed_subgraph_backward",
    "embed_subgraph_forward",
    "embed_target",
    "embed_target_backward",
    "embed_target_forward",
    "propagate",
    "readout_attn",
    "readout_attn_backward",
    "readout_attn_forward",
    "readout_avg",
    "readout_avg_backward",
)


def _flat(x: np.ndarray) -> np.ndarray:
    return x.reshape(-1, x.shape[-1])


def propagate(attrs: np.ndarray, adj_norm: np.ndarray, weight: Parameter) -> np.ndarray:
    """Pre-activation of one GCN layer, adj_norm @ attrs @ W."""
    if attrs.shape[-1] != weight.shape[0]:
        raise ShapeMismatchError("subgraph attributes", f"(..., {weight.shape[0]})", attrs.shape)
    if adj_norm.shape[-1] != attrs.shape[-2]:
        raise ShapeMismatchError("normalized adjacency", f"(..., {attrs.shape[-2]})", adj_norm.shape)
    return adj_norm @ (attrs @ weight.value)


def embed_subgraph_forward(
    attrs: np.ndarray, adj_norm: np.ndarray, weight: Parameter, slope: Parameter
) -> tuple[np.ndarray, np.ndarray]:
    """H and its pre-activation, both (..., P, d)."""
    pre = propagate(attrs, adj_norm, weight)
    return prelu(pre, slope), pre


def embed_subgraph(
    attrs: np.ndarray, adj_norm: np.ndarray, weight: Parameter, slope: Parameter
) -> np.ndarray:
    """H = PReLU(adj_norm @ attrs @ W), shape (..., P, d)."""
    return embed_subgraph_forward(attrs, adj_norm, weight, slope)[0]


def embed_subgraph_backward(
    attrs: np.ndarray,
    adj_norm: np.ndarray,
    pre: np.ndarray,
    weight: Parameter,
    slope: Parameter,
    grad_h: np.ndarray,
) -> None:
    d_pre = prelu_backward(pre, slope, grad_h)
    d_z = np.swapaxes(adj_norm, -1, -2) @ d_pre
    weight.accumulate(_flat(attrs).T @ _flat(d_z))


def embed_target_forward(
    x: np.ndarray, weight: Parameter, slope: Parameter
) -> tuple[np.ndarray, np.ndarray]:
    if x.shape[-1] != weight.shape[0]:
        raise ShapeMismatchError("target attributes", f"(..., {weight.shape[0]})", x.shape)
    pre = x @ weight.value
    return prelu(pre, slope), pre


def embed_target(x: np.ndarray, weight: Parameter, slope: Parameter) -> np.ndarray:
    """h = PReLU(x @ W) on the original, non-anonymized target attributes."""
    return embed_target_forward(x, weight, slope)[0]


def embed_target_backward(
    x: np.ndarray, pre: np.ndarray, weight: Parameter, slope: Parameter, grad_h: np.ndarray
) -> None:
    d_pre = prelu_backward(pre, slope, grad_h)
    weight.accumulate(_flat(x).T @ _flat(d_pre))


def readout_avg(h: np.ndarray) -> np.ndarray:
    return h.mean(axis=-2)


def readout_avg_backward(grad_e: np.ndarray, size: int) -> np.ndarray:
    return np.repeat(grad_e[..., None, :], size, axis=-2) / size


def attention_gate(sim: np.ndarray, attn_weight: Parameter, attn_bias: Parameter) -> np.ndarray:
    """Per-node gate sigmoid(s W_s + b); not normalized to sum to one."""
    return sigmoid(sim @ attn_weight.value + attn_bias.value)


def readout_attn_forward(
    h: np.ndarray, sim: np.ndarray, attn_weight: Parameter, attn_bias: Parameter
) -> tuple[np.ndarray, np.ndarray]:
    """The readout and the gate it used."""
    gate = attention_gate(sim, attn_weight, attn_bias)
    return np.sum(gate[..., None] * h, axis=-2), gate


def readout_attn(
    h: np.ndarray, sim: np.ndarray, attn_weight: Parameter, attn_bias: Parameter
) -> np.ndarray:
    """e = gate @ H with the similarity-driven gate of :func:`attention_gate`."""
    return readout_attn_forward(h, sim, attn_weight, attn_bias)[0]


def readout_attn_backward(
    h: np.ndarray,
    sim: np.ndarray,
    gate: np.ndarray,
    attn_weight: Parameter,
    attn_bias: Parameter,
    grad_e: np.ndarray,
) -> np.ndarray:
    grad_h = gate[..., None] * grad_e[..., None, :]
    d_gate = np.sum(h * grad_e[..., None, :], axis=-1)
    d_pre = sigmoid_backward(gate, d_gate)
    attn_weight.accumulate(_flat(sim).T @ _flat(d_pre))
    attn_bias.accumulate(_flat(d_pre).sum(axis=0))
    return grad_h


def discriminate(h: np.ndarray, e: np.ndarray, disc: Parameter) -> np.ndarray:
    """Bilinear agreement sigmoid(h W_d e^T) in [0, 1]."""
    return sigmoid(np.sum((h @ disc.value) * e, axis=-1))


def discriminate_backward(
    h: np.ndarray, e: np.ndarray, score: np.ndarray, disc: Parameter, grad_score: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Returns the gradients w.r.t. ``h`` and ``e``; accumulates W_d."""
    g = sigmoid_backward(score, grad_score)[..., None]
    grad_h = g * (e @ disc.value.T)
    grad_e = g * (h @ disc.value)
    disc.accumulate(_flat(g * h).T @ _flat(e))
    return grad_h, grad_e


def _check_gamma(gamma: float) -> None:
    if not 0.0 <= gamma <= 1.0:
        msg = f"gamma {gamma} must lie in [0, 1]"
        raise ConfigError(msg)


def batch_loss(scores: ViewScores, gamma: float) -> float:
    """(1 - gamma) BCE of the dense view plus gamma BCE of the spar view."""
    _check_gamma(gamma)
    dense = bce(scores.pos_dense, scores.neg_dense)
    spar = bce(scores.pos_spar, scores.neg_spar)
    return (1.0 - gamma) * dense + gamma * spar


def batch_loss_backward(scores: ViewScores, gamma: float) -> ViewScores:
    """Gradients of :func:`batch_loss` w.r.t. each of the four score vectors."""
    _check_gamma(gamma)
    d_pos_dense, d_neg_dense = bce_backward(scores.pos_dense, scores.neg_dense)
    d_pos_spar, d_neg_spar = bce_backward(scores.pos_spar, scores.neg_spar)
    return ViewScores(
        pos_dense=(1.0 - gamma) * d_pos_dense,
        neg_dense=(1.0 - gamma) * d_neg_dense,
        pos_spar=gamma * d_pos_spar,
        neg_spar=gamma * d_neg_spar,
    )
