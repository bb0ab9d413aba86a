from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, computed_field

__all__ = ("ScoreTable", "ViewScores")


class ViewScores(BaseModel):
    """Discriminator outputs for one batch.

    Attributes:
        pos_dense (np.ndarray): s_i^d per target.
        neg_dense (np.ndarray): negative-pair dense-view score per target.
        pos_spar (np.ndarray): s_i^s per target.
        neg_spar (np.ndarray): negative-pair spar-view score per target.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    pos_dense: np.ndarray
    neg_dense: np.ndarray
    pos_spar: np.ndarray
    neg_spar: np.ndarray

    def contrast(self, gamma: float) -> np.ndarray:
        """One round of contrastive anomaly scores, each in [-1, 1]."""
        dense = self.neg_dense - self.pos_dense
        spar = self.neg_spar - self.pos_spar
        return (1.0 - gamma) * dense + gamma * spar


class ScoreTable(BaseModel):
    """Per-node anomaly scores.

    Attributes:
        spar_raw (np.ndarray): Unnormalized sparsification score.
        spar_norm (np.ndarray): Sparsification score min-max normalized across nodes.
        con (np.ndarray): Contrastive score averaged over rounds.
        final (np.ndarray): Fused score.
        labels (np.ndarray | None): Binary ground truth, when known.
        lambda_ (float): Fusion weight used.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    spar_raw: np.ndarray
    spar_norm: np.ndarray
    con: np.ndarray
    final: np.ndarray
    labels: np.ndarray | None = None
    lambda_: float

    @computed_field
    @property
    def n(self) -> int:
        return self.final.shape[0]

    def rows(self) -> list[tuple[int, float, float, float, float, int]]:
        """CSV rows ``node_id, score_spar_raw, score_spar_norm, score_con, score_final, label``.

        Nodes without ground truth get label -1.
        """
        labels = self.labels if self.labels is not None else np.full(self.n, -1)
        return [
            (i, float(r), float(s), float(c), float(f), int(y))
            for i, (r, s, c, f, y) in enumerate(
                zip(self.spar_raw, self.spar_norm, self.con, self.final, labels, strict=True)
            )
        ]
