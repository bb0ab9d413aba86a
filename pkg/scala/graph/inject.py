from __future__ import annotations

from itertools import combinations

import numpy as np
from loguru import logger

from ..constants.graph import INJECT_ATTRIBUTE_STREAM, INJECT_STRUCTURAL_STREAM
from ..enums import AnomalyKind
from ..errors import ConfigError
from ..models import AnomalyLabels, AttributedGraph, InjectionConfig
from ..utils import lane_rng

__all__ = ("inject_anomalies", "inject_attribute", "inject_structural")


def _check_structure(graph: AttributedGraph) -> None:
    adj = graph.adjacency
    if adj.diagonal().any() or (adj != adj.T).nnz:
        msg = "injection broke adjacency symmetry or introduced self-loops"
        raise AssertionError(msg)


def inject_structural(
    graph: AttributedGraph, cfg: InjectionConfig
) -> tuple[AttributedGraph, AnomalyLabels]:
    """Plant ``clique_count`` disjoint cliques of ``clique_size`` uniformly drawn nodes.

    Existing edges are kept; attributes are untouched.

    Returns:
        tuple[AttributedGraph, AnomalyLabels]: The perturbed graph and its structural labels.
    """
    labels = np.zeros(graph.n, dtype=np.int8)
    if cfg.clique_count == 0:
        return graph, AnomalyLabels(labels=labels)
    if cfg.structural_count > graph.n:
        msg = f"{cfg.clique_count} cliques of size {cfg.clique_size} need {cfg.structural_count} distinct nodes, graph has {graph.n}"
        raise ConfigError(msg)

    rng = lane_rng(cfg.rng_seed, INJECT_STRUCTURAL_STREAM)
    members = rng.choice(graph.n, size=cfg.structural_count, replace=False)
    cliques = members.reshape(cfg.clique_count, cfg.clique_size)

    pairs = np.asarray(
        [pair for clique in cliques for pair in combinations(clique.tolist(), 2)], dtype=np.int64
    )
    old_src, old_dst = graph.edges()
    perturbed = AttributedGraph.from_edges(
        np.concatenate([old_src, pairs[:, 0]]),
        np.concatenate([old_dst, pairs[:, 1]]),
        graph.attributes,
    )
    _check_structure(perturbed)
    labels[members] = AnomalyKind.STRUCTURAL
    logger.info(
        f"Injected {cfg.clique_count} cliques of size {cfg.clique_size} "
        f"({perturbed.m - graph.m} new edges)"
    )
    return perturbed, AnomalyLabels(labels=labels)


def inject_attribute(
    graph: AttributedGraph, cfg: InjectionConfig, exclude: AnomalyLabels | None = None
) -> tuple[AttributedGraph, AnomalyLabels]:
    """Swap the attributes of ``attribute_anomaly_count`` victims with far-away rows.

    Each victim, drawn uniformly among nodes not flagged in ``exclude``, examines
    ``candidate_pool_size`` other nodes and copies the row of the candidate farthest from
    it in Euclidean distance. Candidate rows are read from the pre-injection attributes and
    left untouched; adjacency is unchanged.

    Returns:
        tuple[AttributedGraph, AnomalyLabels]: The perturbed graph and its attribute labels.
    """
    labels = np.zeros(graph.n, dtype=np.int8)
    count = cfg.attribute_anomaly_count
    if count == 0:
        return graph, AnomalyLabels(labels=labels)

    available = np.arange(graph.n)
    if exclude is not None:
        available = available[exclude.labels == AnomalyKind.NORMAL]
    if available.size < count:
        msg = f"{count} attribute anomalies requested but only {available.size} unlabeled nodes remain"
        raise ConfigError(msg)
    if cfg.candidate_pool_size > graph.n - 1:
        msg = f"candidate pool of {cfg.candidate_pool_size} exceeds the {graph.n - 1} other nodes"
        raise ConfigError(msg)

    rng = lane_rng(cfg.rng_seed, INJECT_ATTRIBUTE_STREAM)
    victims = rng.choice(available, size=count, replace=False)
    original = graph.attributes
    attrs = original.copy()
    for victim in victims.tolist():
        others = rng.choice(graph.n - 1, size=cfg.candidate_pool_size, replace=False)
        candidates = others + (others >= victim)
        dist = np.linalg.norm(original[candidates] - original[victim], axis=1)
        attrs[victim] = original[candidates[int(np.argmax(dist))]]

    labels[victims] = AnomalyKind.ATTRIBUTE
    perturbed = graph.with_attributes(attrs)
    _check_structure(perturbed)
    logger.info(f"Injected {count} attribute anomalies (k={cfg.candidate_pool_size})")
    return perturbed, AnomalyLabels(labels=labels)


def inject_anomalies(
    graph: AttributedGraph, cfg: InjectionConfig
) -> tuple[AttributedGraph, AnomalyLabels]:
    """Structural then attribute injection; labels of both kinds merged."""
    cfg.check_fits(graph.n)
    graph, structural = inject_structural(graph, cfg)
    graph, attribute = inject_attribute(graph, cfg, exclude=structural)
    labels = structural.merge(attribute)
    if labels.anomaly_count != cfg.total:
        msg = f"labeled {labels.anomaly_count} anomalies, expected {cfg.total}"
        raise AssertionError(msg)
    return graph, labels
