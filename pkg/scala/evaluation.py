from __future__ import annotations

from typing import Any

import numpy as np
from scipy.stats import rankdata

from .errors import ShapeMismatchError, UndefinedMetricError
from .models import MetricsReport, RocPoint
from .utils import config_hash

__all__ = ("auc", "build_report", "require_both_classes", "roc_points")


def require_both_classes(labels: np.ndarray) -> tuple[int, int]:
    """Count positives and negatives.

    Raises:
        UndefinedMetricError: If only one class is present.
    """
    n_pos = int(np.count_nonzero(labels))
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        msg = f"labels need both classes, got {n_pos} positive and {n_neg} negative"
        raise UndefinedMetricError(msg)
    return n_pos, n_neg


def _class_counts(scores: np.ndarray, labels: np.ndarray) -> tuple[int, int]:
    if scores.shape != labels.shape or scores.ndim != 1:
        raise ShapeMismatchError("scores/labels", "two vectors of equal length", (scores.shape, labels.shape))
    return require_both_classes(labels)


def auc(scores: np.ndarray, labels: np.ndarray) -> float:
    """Area under the ROC curve as the Mann-Whitney statistic, ties counting one half.

    Args:
        scores: Anomaly scores, higher meaning more anomalous.
        labels: Binary ground truth, nonzero for anomalies.

    Returns:
        float: The probability that a random anomaly outranks a random normal node.

    Raises:
        UndefinedMetricError: If only one class is present.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels) != 0
    n_pos, n_neg = _class_counts(scores, labels)
    ranks = rankdata(scores, method="average")
    u = ranks[labels].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u / (n_pos * n_neg))


def roc_points(scores: np.ndarray, labels: np.ndarray) -> list[RocPoint]:
    """ROC vertices with one threshold per distinct score, in descending order.

    The curve starts at (0, 0) with an infinite threshold and ends at (1, 1) at the lowest
    score; tied scores produce a single diagonal step.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels) != 0
    n_pos, n_neg = _class_counts(scores, labels)

    order = np.argsort(-scores, kind="stable")
    ranked = scores[order]
    hits = labels[order]
    tp = np.cumsum(hits)
    fp = np.cumsum(~hits)
    # last index of every run of equal scores
    ends = np.flatnonzero(np.append(ranked[1:] != ranked[:-1], True))

    points = [RocPoint(fpr=0.0, tpr=0.0, threshold=float("inf"))]
    points.extend(
        RocPoint(fpr=fp[i] / n_neg, tpr=tp[i] / n_pos, threshold=float(ranked[i]))
        for i in ends.tolist()
    )
    return points


def build_report(
    scores: np.ndarray,
    labels: np.ndarray,
    *,
    seed: int = 0,
    config: dict[str, Any] | None = None,
) -> MetricsReport:
    """AUC, ROC and class counts with the resolved config echoed for provenance."""
    labels = np.asarray(labels) != 0
    config = config or {}
    return MetricsReport(
        auc=auc(scores, labels),
        roc_points=roc_points(scores, labels),
        n_pos=int(labels.sum()),
        n_neg=int((~labels).sum()),
        seed=seed,
        config_hash=config_hash(config),
        config=config,
    )
