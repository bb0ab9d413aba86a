from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict

from .graph import AttributedGraph

__all__ = ("SimilarityIndex", "SparsifiedView")


class SimilarityIndex(BaseModel):
    """Attribute similarities restricted to existing edges.

    Entries are aligned with the CSR order of the graph's adjacency, one per directed edge.

    Attributes:
        rows (np.ndarray): Source node of each directed edge.
        cols (np.ndarray): Destination node of each directed edge.
        raw (np.ndarray): Dot similarity x_i . x_j.
        normalized (np.ndarray): Row min-max normalized similarity in [0, 1].
        row_min (np.ndarray): Per-node minimum used for normalization.
        row_max (np.ndarray): Per-node maximum used for normalization.
        full_row (bool): Whether min/max ran over all n columns instead of incident edges.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    rows: np.ndarray
    cols: np.ndarray
    raw: np.ndarray
    normalized: np.ndarray
    row_min: np.ndarray
    row_max: np.ndarray
    full_row: bool = False

    @property
    def n(self) -> int:
        return self.row_min.shape[0]

    def normalized_matrix(self) -> sp.csr_array:
        """S^G as a sparse matrix holding entries for existing edges only.

        Zero-valued normalized entries are kept as explicit zeros.
        """
        return sp.csr_array((self.normalized, (self.rows, self.cols)), shape=(self.n, self.n))

    def mean_per_node(self) -> np.ndarray:
        """Mean normalized similarity of every node to its neighbors, NaN for isolated nodes."""
        sums = np.bincount(self.rows, weights=self.normalized, minlength=self.n)
        counts = np.bincount(self.rows, minlength=self.n)
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(counts > 0, sums / np.maximum(counts, 1), np.nan)


class SparsifiedView(BaseModel):
    """The spar-view topology obtained by epsilon-thresholding.

    Attributes:
        adjacency (scipy.sparse.csr_array): A^spar, a symmetric subset of A.
        removed_count (np.ndarray): Incident edges deleted per node.
        epsilon (float): The threshold used.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    adjacency: sp.csr_array
    removed_count: np.ndarray
    epsilon: float

    @property
    def m(self) -> int:
        return self.adjacency.nnz // 2

    def as_graph(self, graph: AttributedGraph) -> AttributedGraph:
        """The spar-view as a graph in its own right, sharing ``graph``'s attributes."""
        return graph.with_adjacency(self.adjacency)
