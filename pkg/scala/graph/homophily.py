from __future__ import annotations

import numpy as np

from ..constants.graph import HOMOPHILY_BIN_WIDTH
from ..models import AnomalyLabels, AttributedGraph, HomophilyBin, HomophilyHistogram, SimilarityIndex

__all__ = ("homophily_stats",)


_BIN_SLACK = 1e-9


def _percentages(values: np.ndarray, bin_width: float, k: int) -> np.ndarray:
    if values.size == 0:
        return np.zeros(k)
    # bins are [lo, hi) except the last, which also takes 1.0
    index = np.clip(np.floor(values / bin_width + _BIN_SLACK).astype(np.int64), 0, k - 1)
    return 100.0 * np.bincount(index, minlength=k) / values.size


def homophily_stats(
    graph: AttributedGraph,
    sim: SimilarityIndex,
    labels: AnomalyLabels,
    *,
    bin_width: float = HOMOPHILY_BIN_WIDTH,
) -> HomophilyHistogram:
    """Histogram of mean normalized neighbor similarity, split by ground truth.

    Isolated nodes have no neighbor similarity and are only counted.

    Args:
        graph: The graph ``sim`` was computed on.
        sim: Its similarity index.
        labels: Ground truth for every node.
        bin_width: Width of the equal bins partitioning [0, 1].

    Returns:
        HomophilyHistogram: Percentage distributions and class means.
    """
    if labels.n != graph.n or sim.n != graph.n:
        msg = "graph, similarity index and labels must cover the same nodes"
        raise ValueError(msg)

    means = sim.mean_per_node()
    connected = ~np.isnan(means)
    anomalous = labels.binary.astype(bool)
    normal_values = means[connected & ~anomalous]
    anomalous_values = means[connected & anomalous]

    k = round(1.0 / bin_width)
    edges = np.round(np.arange(k + 1) * bin_width, 10)
    pct_normal = _percentages(normal_values, bin_width, k)
    pct_anomalous = _percentages(anomalous_values, bin_width, k)
    bins = [
        HomophilyBin(bin_lo=float(lo), bin_hi=float(hi), pct_normal=float(pn), pct_anomalous=float(pa))
        for lo, hi, pn, pa in zip(edges[:-1], edges[1:], pct_normal, pct_anomalous, strict=True)
    ]
    return HomophilyHistogram(
        bins=bins,
        normal_mean=float(normal_values.mean()) if normal_values.size else None,
        anomalous_mean=float(anomalous_values.mean()) if anomalous_values.size else None,
        isolated_count=int(np.count_nonzero(~connected)),
    )
