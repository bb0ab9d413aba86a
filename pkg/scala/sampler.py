from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .enums import Polarity, View
from .errors import ConfigError, ShapeMismatchError
from .models import AttributedGraph, BatchPairs, PairBatch, SamplerConfig, SubgraphPair
from .utils import lane_rng, minmax_rows

__all__ = ("build_pair", "build_pairs", "make_batch_pairs", "rwr_sample")


def rwr_sample(
    graph: AttributedGraph,
    target: int,
    cfg: SamplerConfig,
    rng: np.random.Generator | None = None,
) -> list[int]:
    """Collect the first P distinct nodes visited by a random walk with restart.

    At every step the walker jumps back to ``target`` with ``cfg.restart_prob``, otherwise
    it moves to a uniformly chosen neighbor. When the step budget runs out (or the target is
    isolated) the list is padded with ``target``.

    Args:
        graph: The view to walk on.
        target: Start node, always first in the result.
        cfg: Sampling settings.
        rng: Random stream; derived from ``cfg.rng_seed`` and ``target`` when omitted.

    Returns:
        list[int]: Exactly ``cfg.subgraph_size`` node ids.
    """
    if not 0 <= target < graph.n:
        msg = f"target {target} outside [0, {graph.n})"
        raise ConfigError(msg)
    if rng is None:
        rng = lane_rng(cfg.rng_seed, target)

    size = cfg.subgraph_size
    indptr = graph.adjacency.indptr
    indices = graph.adjacency.indices
    visited = [target]
    seen = {target}
    if size > 1 and indptr[target + 1] > indptr[target]:
        draws = rng.random((cfg.max_steps, 2))
        current = target
        for restart, pick in draws.tolist():
            if restart < cfg.restart_prob:
                current = target
                continue
            lo, hi = indptr[current], indptr[current + 1]
            current = int(indices[lo + int(pick * (hi - lo))])
            if current not in seen:
                seen.add(current)
                visited.append(current)
                if len(visited) == size:
                    break
    visited.extend([target] * (size - len(visited)))
    return visited


def _normalized_adjacency(graph: AttributedGraph, node_ids: np.ndarray) -> np.ndarray:
    """D^-1/2 (A_sub + I) D^-1/2 for a (B, P) stack of id lists.

    A repeated id is padding: it keeps only its self-loop.
    """
    b, p = node_ids.shape
    induced = graph.has_edges(node_ids[:, :, None], node_ids[:, None, :]).astype(np.float64)
    duplicate = np.zeros((b, p), dtype=bool)
    for k in range(1, p):
        duplicate[:, k] = (node_ids[:, :k] == node_ids[:, k : k + 1]).any(axis=1)
    induced[duplicate] = 0.0
    induced.transpose(0, 2, 1)[duplicate] = 0.0
    induced += np.eye(p)
    d_inv_sqrt = 1.0 / np.sqrt(induced.sum(axis=2))
    return d_inv_sqrt[:, :, None] * induced * d_inv_sqrt[:, None, :]


def build_pairs(
    graph: AttributedGraph,
    node_ids: np.ndarray,
    targets: np.ndarray,
    polarity: Polarity,
    view: View,
) -> PairBatch:
    """Turn (B, P) sampled id lists into encoder-ready subgraphs.

    Args:
        graph: The view the ids were sampled on.
        node_ids: Sampled ids, each row's own target in column 0.
        targets: The contrasting target of each row; equal to ``node_ids[:, 0]`` for
            positive pairs.
        polarity: Pair polarity.
        view: Source view.

    Returns:
        PairBatch: Anonymized attributes, normalized adjacency and similarity vectors.
    """
    node_ids = np.asarray(node_ids, dtype=np.int64)
    targets = np.asarray(targets, dtype=np.int64)
    if node_ids.ndim != 2 or targets.shape != node_ids.shape[:1]:
        raise ShapeMismatchError("node_ids/targets", "(B, P) and (B,)", (node_ids.shape, targets.shape))

    X = graph.attributes
    gathered = X[node_ids]
    raw_sim = np.einsum("bf,bpf->bp", X[targets], gathered)
    sim_vector = minmax_rows(raw_sim, degenerate=1.0)
    gathered[:, 0, :] = 0.0

    return PairBatch(
        targets=targets,
        node_ids=node_ids,
        attrs=gathered,
        adj_norm=_normalized_adjacency(graph, node_ids),
        sim_vector=sim_vector,
        view=view,
        polarity=polarity,
    )


def build_pair(
    graph: AttributedGraph,
    node_ids: Sequence[int],
    polarity: Polarity,
    view: View,
    *,
    contrast_target: int | None = None,
) -> SubgraphPair:
    """Single-subgraph form of :func:`build_pairs`."""
    ids = np.asarray([node_ids], dtype=np.int64)
    target = ids[0, 0] if contrast_target is None else contrast_target
    return build_pairs(graph, ids, np.asarray([target]), polarity, view).pair(0)


def _sample_ids(
    graph: AttributedGraph, targets: np.ndarray, cfg: SamplerConfig, rng: np.random.Generator
) -> np.ndarray:
    return np.asarray([rwr_sample(graph, int(t), cfg, rng) for t in targets], dtype=np.int64)


def make_batch_pairs(
    dense: AttributedGraph,
    spar: AttributedGraph,
    targets: np.ndarray,
    cfg: SamplerConfig,
    rng: np.random.Generator,
) -> BatchPairs:
    """Sample positive and negative pairs for every target on both views.

    The negative subgraph of the target at position i is the positive subgraph of the
    target at position (i + 1) mod B of the same view, with its similarity vector
    recomputed against target i.

    Args:
        dense: The original graph.
        spar: The sparsified graph.
        targets: Batch of distinct target ids, at least two.
        cfg: Sampling settings.
        rng: The batch's random stream.

    Returns:
        BatchPairs: pos_dense, neg_dense, pos_spar and neg_spar for every target.
    """
    targets = np.asarray(targets, dtype=np.int64)
    if targets.size < 2:
        msg = f"negative sampling by rotation needs a batch of at least 2 targets, got {targets.size}"
        raise ConfigError(msg)

    batches: dict[str, PairBatch] = {}
    for view, graph in ((View.DENSE, dense), (View.SPAR, spar)):
        pos_ids = _sample_ids(graph, targets, cfg, rng)
        neg_ids = np.roll(pos_ids, -1, axis=0)
        batches[f"pos_{view.value}"] = build_pairs(graph, pos_ids, targets, Polarity.POSITIVE, view)
        batches[f"neg_{view.value}"] = build_pairs(graph, neg_ids, targets, Polarity.NEGATIVE, view)
    return BatchPairs(targets=targets, **batches)
