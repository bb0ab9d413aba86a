from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..enums import SparTarget, View
from ..models import BatchPairs, PairBatch, ViewScores
from .layers import (
    batch_loss,
    batch_loss_backward,
    discriminate,
    discriminate_backward,
    embed_subgraph_backward,
    embed_subgraph_forward,
    embed_target_backward,
    embed_target_forward,
    readout_attn_backward,
    readout_attn_forward,
    readout_avg,
    readout_avg_backward,
)
from .params import ModelParams

__all__ = ("ForwardCache", "backward", "forward", "loss_and_backward", "score_batch")

_BRANCHES = ("pos_dense", "neg_dense", "pos_spar", "neg_spar")


class _Branch(NamedTuple):
    batch: PairBatch
    pre: np.ndarray
    h: np.ndarray
    gate: np.ndarray | None
    e: np.ndarray
    score: np.ndarray


class ForwardCache(NamedTuple):
    """Intermediates :func:`backward` needs."""

    x: np.ndarray
    pre_target: np.ndarray
    target: np.ndarray
    pre_target_hat: np.ndarray
    target_hat: np.ndarray
    branches: dict[str, _Branch]
    scores: ViewScores
    spar_target: SparTarget


def _branch(params: ModelParams, batch: PairBatch, target: np.ndarray) -> _Branch:
    weight, slope = params.view_weights(batch.view)
    h, pre = embed_subgraph_forward(batch.attrs, batch.adj_norm, weight, slope)
    if batch.view is View.DENSE:
        gate = None
        e = readout_avg(h)
    else:
        e, gate = readout_attn_forward(h, batch.sim_vector, params.attn_weight, params.attn_bias)
    return _Branch(batch, pre, h, gate, e, discriminate(target, e, params.disc))


def forward(
    params: ModelParams,
    pairs: BatchPairs,
    attributes: np.ndarray,
    *,
    spar_target: SparTarget = SparTarget.HAT,
) -> tuple[ViewScores, ForwardCache]:
    """Score the four pair batches of one step.

    Args:
        params: Model parameters.
        pairs: Positive and negative pairs of both views.
        attributes: The full, non-anonymized attribute matrix.
        spar_target: Whether the spar-view discriminator reads the spar-view target
            embedding or reuses the dense-view one.

    Returns:
        tuple: The four per-target discriminative scores and the cache for backward.
    """
    x = attributes[pairs.targets]
    target, pre_target = embed_target_forward(x, params.weight, params.slope)
    target_hat, pre_target_hat = embed_target_forward(x, params.weight_hat, params.slope_hat)
    spar_h = target_hat if spar_target is SparTarget.HAT else target

    branches = {
        name: _branch(params, getattr(pairs, name), target if name.endswith("dense") else spar_h)
        for name in _BRANCHES
    }
    scores = ViewScores(**{name: branch.score for name, branch in branches.items()})
    cache = ForwardCache(
        x, pre_target, target, pre_target_hat, target_hat, branches, scores, spar_target
    )
    return scores, cache


def backward(params: ModelParams, cache: ForwardCache, gamma: float) -> None:
    """Accumulate the gradient of the step loss into every parameter."""
    grads = batch_loss_backward(cache.scores, gamma)
    grad_target = np.zeros_like(cache.target)
    grad_target_hat = np.zeros_like(cache.target_hat)

    for name in _BRANCHES:
        branch = cache.branches[name]
        batch = branch.batch
        dense = batch.view is View.DENSE
        if dense or cache.spar_target is SparTarget.DENSE:
            target, grad_into = cache.target, grad_target
        else:
            target, grad_into = cache.target_hat, grad_target_hat

        d_target, d_e = discriminate_backward(
            target, branch.e, branch.score, params.disc, getattr(grads, name)
        )
        grad_into += d_target
        if branch.gate is None:
            d_h = readout_avg_backward(d_e, branch.h.shape[-2])
        else:
            d_h = readout_attn_backward(
                branch.h, batch.sim_vector, branch.gate, params.attn_weight, params.attn_bias, d_e
            )
        weight, slope = params.view_weights(batch.view)
        embed_subgraph_backward(batch.attrs, batch.adj_norm, branch.pre, weight, slope, d_h)

    embed_target_backward(cache.x, cache.pre_target, params.weight, params.slope, grad_target)
    embed_target_backward(
        cache.x, cache.pre_target_hat, params.weight_hat, params.slope_hat, grad_target_hat
    )


def loss_and_backward(
    params: ModelParams,
    pairs: BatchPairs,
    attributes: np.ndarray,
    gamma: float,
    *,
    spar_target: SparTarget = SparTarget.HAT,
) -> float:
    """Forward, loss and backward for one batch; gradients are added, not reset."""
    scores, cache = forward(params, pairs, attributes, spar_target=spar_target)
    loss = batch_loss(scores, gamma)
    backward(params, cache, gamma)
    return loss


def score_batch(
    params: ModelParams,
    pairs: BatchPairs,
    attributes: np.ndarray,
    *,
    spar_target: SparTarget = SparTarget.HAT,
) -> ViewScores:
    """Forward only."""
    scores, _ = forward(params, pairs, attributes, spar_target=spar_target)
    return scores
