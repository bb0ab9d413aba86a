from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field

__all__ = ("HomophilyBin", "HomophilyHistogram", "MetricsReport", "RocPoint")


class RocPoint(BaseModel):
    """One ROC vertex; the threshold is +inf for the (0, 0) endpoint."""

    fpr: float
    tpr: float
    threshold: float


class MetricsReport(BaseModel):
    """
    Evaluation summary of one scored run.

    Attributes:
        auc (float): Area under the ROC curve.
        roc_points (list[RocPoint]): Curve vertices from (0, 0) to (1, 1).
        n_pos (int): Anomalous nodes.
        n_neg (int): Normal nodes.
        seed (int): Seed of the run.
        config_hash (str): Short hash of the resolved config.
        config (dict[str, Any]): The resolved config, echoed for provenance.
    """

    auc: float = Field(ge=0.0, le=1.0)
    roc_points: list[RocPoint] = Field(default_factory=list, exclude=True)
    n_pos: int
    n_neg: int
    seed: int = 0
    config_hash: str = ""
    config: dict[str, Any] = Field(default_factory=dict)


class HomophilyBin(BaseModel):
    bin_lo: float
    bin_hi: float
    pct_normal: float
    pct_anomalous: float


class HomophilyHistogram(BaseModel):
    """
    Distribution of mean neighbor similarity for normal and anomalous nodes.

    Attributes:
        bins (list[HomophilyBin]): Equal-width bins partitioning [0, 1].
        normal_mean (float | None): Class mean over non-isolated normal nodes.
        anomalous_mean (float | None): Class mean over non-isolated anomalous nodes.
        isolated_count (int): Nodes left out because they have no neighbors.
    """

    bins: list[HomophilyBin]
    normal_mean: float | None = None
    anomalous_mean: float | None = None
    isolated_count: int = 0
