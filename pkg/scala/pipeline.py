from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict
from tqdm import tqdm

from .constants.graph import INFER_STREAM, INIT_STREAM, TRAIN_STREAM
from .enums import Variant
from .errors import ConfigError, ShapeMismatchError, TrainingDivergedError
from .evaluation import auc
from .model import ModelParams, loss_and_backward, score_batch
from .models import (
    AnomalyLabels,
    AttributedGraph,
    SamplerConfig,
    ScoreTable,
    SimilarityIndex,
    SparsifiedView,
    TrainConfig,
)
from .nn import Adam
from .sampler import make_batch_pairs
from .sparsify import edge_similarities, spar_scores, sparsify
from .utils import lane_rng, minmax_normalize

__all__ = (
    "PipelineResult",
    "SparViews",
    "TrainResult",
    "fuse_scores",
    "infer_contrast_scores",
    "prepare_views",
    "run_ablation",
    "run_pipeline",
    "split_batches",
    "train",
)


class SparViews(BaseModel):
    """The sparsification stage's outputs.

    Attributes:
        similarity (SimilarityIndex): Per-edge similarities of the dense view.
        view (SparsifiedView): The thresholded adjacency and removed-edge counts.
        spar_graph (AttributedGraph): The spar view with the original attributes.
        spar_raw (np.ndarray): Unnormalized sparsification score per node.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    similarity: SimilarityIndex
    view: SparsifiedView
    spar_graph: AttributedGraph
    spar_raw: np.ndarray


class TrainResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    params: ModelParams
    loss_trace: list[float]


class PipelineResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    views: SparViews
    training: TrainResult
    scores: ScoreTable


def prepare_views(graph: AttributedGraph, cfg: TrainConfig) -> SparViews:
    """Similarities, epsilon-sparsified view and sparsification score of ``graph``."""
    similarity = edge_similarities(graph, full_row=cfg.full_row_normalization)
    view = sparsify(graph, similarity, cfg.epsilon)
    return SparViews(
        similarity=similarity,
        view=view,
        spar_graph=view.as_graph(graph),
        spar_raw=spar_scores(graph, view),
    )


def split_batches(n: int, batch_size: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Shuffle 0..n-1 into batches of ``batch_size``.

    The last batch may be smaller; a trailing singleton is merged into the batch before it,
    since negatives are drawn by rotating within a batch.
    """
    if n < 2:
        msg = f"contrastive training needs at least 2 nodes, got {n}"
        raise ConfigError(msg)
    order = rng.permutation(n)
    batches = [order[i : i + batch_size] for i in range(0, n, batch_size)]
    if len(batches) > 1 and batches[-1].size == 1:
        tail = batches.pop()
        batches[-1] = np.concatenate([batches[-1], tail])
    return batches


def _sampler_for(cfg: TrainConfig, sampler: SamplerConfig | None) -> SamplerConfig:
    if sampler is None:
        return SamplerConfig(subgraph_size=cfg.subgraph_size, rng_seed=cfg.rng_seed)
    if sampler.subgraph_size != cfg.subgraph_size:
        msg = f"sampler subgraph_size {sampler.subgraph_size} != train subgraph_size {cfg.subgraph_size}"
        raise ConfigError(msg)
    return sampler


def train(
    graph: AttributedGraph,
    spar_graph: AttributedGraph,
    cfg: TrainConfig,
    sampler: SamplerConfig | None = None,
    *,
    params: ModelParams | None = None,
    progress: bool = True,
) -> TrainResult:
    """Fit the two-view contrastive model.

    Every epoch shuffles the nodes into batches; each batch samples fresh positive and
    negative pairs on both views, backpropagates the weighted loss and takes one Adam step.

    Args:
        graph: The dense view.
        spar_graph: The sparsified view over the same nodes and attributes.
        cfg: Training settings.
        sampler: Walk settings; derived from ``cfg`` when omitted.
        params: Starting parameters, e.g. from a checkpoint; freshly initialized otherwise.
        progress: Show a tqdm bar.

    Returns:
        TrainResult: The trained parameters and the size-weighted mean loss of every epoch.

    Raises:
        TrainingDivergedError: If a batch loss is NaN or infinite.
    """
    sampler = _sampler_for(cfg, sampler)
    if params is None:
        params = ModelParams.init(
            graph.f, cfg.embedding_dim, cfg.subgraph_size, lane_rng(cfg.rng_seed, INIT_STREAM)
        )
    optimizer = Adam(params.parameters(), cfg.adam)
    optimizer.zero_grad()
    attributes = graph.attributes
    seed = cfg.rng_seed

    loss_trace: list[float] = []
    for epoch in tqdm(range(cfg.epochs), desc="train", unit="epoch", disable=not progress):
        batches = split_batches(graph.n, cfg.batch_size, lane_rng(seed, TRAIN_STREAM, epoch))
        total = 0.0
        for b, targets in enumerate(batches):
            pairs = make_batch_pairs(graph, spar_graph, targets, sampler, lane_rng(seed, TRAIN_STREAM, epoch, b))
            loss = loss_and_backward(params, pairs, attributes, cfg.gamma, spar_target=cfg.spar_target)
            if not np.isfinite(loss):
                raise TrainingDivergedError(epoch, b, loss)
            optimizer.step()
            total += loss * targets.size
            logger.debug(f"epoch {epoch} batch {b}: loss={loss:.6f}")
        loss_trace.append(total / graph.n)
        logger.info(f"Epoch {epoch + 1}/{cfg.epochs}: loss={loss_trace[-1]:.6f}")

    return TrainResult(params=params, loss_trace=loss_trace)


def _score_round(
    graph: AttributedGraph,
    spar_graph: AttributedGraph,
    params: ModelParams,
    cfg: TrainConfig,
    sampler: SamplerConfig,
    round_: int,
) -> np.ndarray:
    seed = cfg.rng_seed
    out = np.empty(graph.n)
    batches = split_batches(graph.n, cfg.batch_size, lane_rng(seed, INFER_STREAM, round_))
    for b, targets in enumerate(batches):
        pairs = make_batch_pairs(graph, spar_graph, targets, sampler, lane_rng(seed, INFER_STREAM, round_, b))
        scores = score_batch(params, pairs, graph.attributes, spar_target=cfg.spar_target)
        out[targets] = scores.contrast(cfg.gamma)
    return out


def infer_contrast_scores(
    graph: AttributedGraph,
    spar_graph: AttributedGraph,
    params: ModelParams,
    cfg: TrainConfig,
    sampler: SamplerConfig | None = None,
    *,
    progress: bool = True,
) -> np.ndarray:
    """Average the gamma-weighted negative-minus-positive score gap over ``cfg.rounds`` rounds.

    Rounds run on up to ``cfg.threads`` worker threads, each with its own random streams,
    and are summed in round order, so the result does not depend on the thread count.

    Returns:
        np.ndarray: One contrastive score in [-1, 1] per node.
    """
    sampler = _sampler_for(cfg, sampler)
    # computed lazily; warm up before the workers share the graphs
    _ = graph.edge_keys, spar_graph.edge_keys
    workers = cfg.threads or os.cpu_count() or 1

    total = np.zeros(graph.n)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_score_round, graph, spar_graph, params, cfg, sampler, r)
            for r in range(cfg.rounds)
        ]
        for future in tqdm(futures, desc="score", unit="round", disable=not progress):
            total += future.result()
    return total / cfg.rounds


def fuse_scores(
    con: np.ndarray,
    spar_raw: np.ndarray,
    lambda_: float,
    labels: np.ndarray | None = None,
    *,
    weighted: bool = True,
) -> ScoreTable:
    """Combine the contrastive and sparsification scores.

    The sparsification score is min-max normalized across nodes first (all-equal maps to
    0). ``weighted=False`` adds the two instead of mixing them by ``lambda_``.
    """
    if not 0.0 <= lambda_ <= 1.0:
        msg = f"lambda {lambda_} must lie in [0, 1]"
        raise ConfigError(msg)
    con = np.asarray(con, dtype=np.float64)
    spar_raw = np.asarray(spar_raw, dtype=np.float64)
    if con.shape != spar_raw.shape:
        raise ShapeMismatchError("score vectors", con.shape, spar_raw.shape)

    spar_norm = minmax_normalize(spar_raw, degenerate=0.0)
    final = (1.0 - lambda_) * con + lambda_ * spar_norm if weighted else con + spar_norm
    return ScoreTable(
        spar_raw=spar_raw,
        spar_norm=spar_norm,
        con=con,
        final=final,
        labels=None if labels is None else np.asarray(labels, dtype=np.int64),
        lambda_=lambda_,
    )


def run_pipeline(
    graph: AttributedGraph,
    cfg: TrainConfig,
    sampler: SamplerConfig | None = None,
    *,
    labels: AnomalyLabels | None = None,
    params: ModelParams | None = None,
    views: SparViews | None = None,
    progress: bool = True,
) -> PipelineResult:
    """Sparsify, train, score and fuse.

    Passing ``params`` skips training and scores with them as they are.
    """
    views = views or prepare_views(graph, cfg)
    logger.info(
        f"Spar view keeps {views.view.m} of {graph.m} edges (epsilon={cfg.epsilon})"
    )
    if params is None:
        training = train(graph, views.spar_graph, cfg, sampler, progress=progress)
    else:
        training = TrainResult(params=params, loss_trace=[])
    con = infer_contrast_scores(
        graph, views.spar_graph, training.params, cfg, sampler, progress=progress
    )
    scores = fuse_scores(
        con, views.spar_raw, cfg.lambda_, labels.binary if labels is not None else None
    )
    return PipelineResult(views=views, training=training, scores=scores)


def run_ablation(
    graph: AttributedGraph,
    labels: AnomalyLabels,
    cfg: TrainConfig,
    sampler: SamplerConfig | None = None,
    *,
    progress: bool = True,
) -> dict[Variant, float]:
    """AUC of the full model and of each variant with one component taken out.

    All variants share the graph, the seed and the sparsified view; only the named knob
    changes. The variant without the spar view is retrained with gamma = 0.
    """
    y = labels.binary
    views = prepare_views(graph, cfg)
    full = run_pipeline(graph, cfg, sampler, labels=labels, views=views, progress=progress)
    con = full.scores.con

    results = {
        Variant.FULL: auc(full.scores.final, y),
        Variant.WITHOUT_SPAR: auc(fuse_scores(con, views.spar_raw, 0.0).final, y),
        Variant.WITHOUT_CON: auc(fuse_scores(con, views.spar_raw, 1.0).final, y),
        Variant.WITHOUT_WEIGHT: auc(fuse_scores(con, views.spar_raw, cfg.lambda_, weighted=False).final, y),
    }
    dense_only = cfg.model_copy(update={"gamma": 0.0})
    no_view = run_pipeline(graph, dense_only, sampler, labels=labels, views=views, progress=progress)
    results[Variant.WITHOUT_SPAR_VIEW] = auc(no_view.scores.final, y)

    for variant, value in results.items():
        logger.info(f"{variant.value}: AUC={value:.4f}")
    return results
