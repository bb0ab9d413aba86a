from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ..enums import Polarity, View
from ..errors import ShapeMismatchError

__all__ = ("BatchPairs", "PairBatch", "SubgraphPair")


class SubgraphPair(BaseModel):
    """One sampled subgraph ready for the encoder.

    Attributes:
        node_ids (np.ndarray): P global ids, the subgraph's own target first.
        attrs (np.ndarray): P x f attributes with row 0 zeroed.
        adj_norm (np.ndarray): P x P symmetric normalized adjacency with self-loops.
        sim_vector (np.ndarray): Similarity of each subgraph node to the contrasting target.
        view (View): The view the subgraph was sampled on.
        polarity (Polarity): Positive for the target's own subgraph.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    node_ids: np.ndarray
    attrs: np.ndarray
    adj_norm: np.ndarray
    sim_vector: np.ndarray
    view: View
    polarity: Polarity

    @property
    def size(self) -> int:
        return self.node_ids.shape[0]


class PairBatch(BaseModel):
    """B subgraphs of one view and polarity, stacked along a leading batch axis.

    Attributes:
        targets (np.ndarray): (B,) contrasting target of every row.
        node_ids (np.ndarray): (B, P) sampled ids, each subgraph's own target first.
        attrs (np.ndarray): (B, P, f) anonymized attributes.
        adj_norm (np.ndarray): (B, P, P) normalized adjacencies.
        sim_vector (np.ndarray): (B, P) similarity vectors.
        view (View): Source view.
        polarity (Polarity): Pair polarity.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    targets: np.ndarray
    node_ids: np.ndarray
    attrs: np.ndarray
    adj_norm: np.ndarray
    sim_vector: np.ndarray
    view: View
    polarity: Polarity

    @model_validator(mode="after")
    def _check_shapes(self) -> PairBatch:
        b, p = self.node_ids.shape
        expected = {
            "targets": (b,),
            "attrs": (b, p, self.attrs.shape[-1]),
            "adj_norm": (b, p, p),
            "sim_vector": (b, p),
        }
        for name, shape in expected.items():
            got = getattr(self, name).shape
            if got != shape:
                raise ShapeMismatchError(name, shape, got)
        return self

    def __len__(self) -> int:
        return self.node_ids.shape[0]

    def pair(self, index: int) -> SubgraphPair:
        """Unstack one row."""
        return SubgraphPair(
            node_ids=self.node_ids[index],
            attrs=self.attrs[index],
            adj_norm=self.adj_norm[index],
            sim_vector=self.sim_vector[index],
            view=self.view,
            polarity=self.polarity,
        )


class BatchPairs(BaseModel):
    """The four pair batches a training or inference step consumes."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    targets: np.ndarray
    pos_dense: PairBatch
    neg_dense: PairBatch
    pos_spar: PairBatch
    neg_spar: PairBatch
