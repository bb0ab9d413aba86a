from __future__ import annotations

from functools import cached_property
from typing import Any

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..enums import AnomalyKind

__all__ = ("AnomalyLabels", "AttributedGraph")


class AttributedGraph(BaseModel):
    """An undirected, unweighted graph whose nodes carry dense attribute rows.

    Attributes:
        adjacency (scipy.sparse.csr_array): Symmetric binary adjacency, sorted neighbor lists,
            no stored self-loops.
        attributes (np.ndarray): Attribute matrix of shape (n, f), float64.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    adjacency: sp.csr_array
    attributes: np.ndarray

    @field_validator("attributes", mode="before")
    def _as_float_matrix(cls, v: Any) -> np.ndarray:
        array = np.asarray(v, dtype=np.float64)
        if array.ndim != 2:
            msg = f"attributes must be a 2-D matrix, got {array.ndim} dimensions"
            raise ValueError(msg)
        return array

    @model_validator(mode="after")
    def _check_invariants(self) -> AttributedGraph:
        adj = self.adjacency
        n = self.attributes.shape[0]
        if adj.shape != (n, n):
            msg = f"adjacency shape {adj.shape} does not match {n} attribute rows"
            raise ValueError(msg)
        if not np.isfinite(self.attributes).all():
            msg = "attributes contain NaN or infinite values"
            raise ValueError(msg)
        if adj.diagonal().any():
            msg = "adjacency stores self-loops"
            raise ValueError(msg)
        if not adj.has_canonical_format:
            msg = "adjacency neighbor lists must be sorted without duplicates"
            raise ValueError(msg)
        if (adj != adj.T).nnz:
            msg = "adjacency is not symmetric"
            raise ValueError(msg)
        return self

    @classmethod
    def from_edges(
        cls, src: np.ndarray, dst: np.ndarray, attributes: np.ndarray
    ) -> AttributedGraph:
        """Build a graph from (possibly duplicated, possibly one-sided) edge endpoints.

        Self-loops are dropped; both orientations of every edge are stored once.
        """
        attributes = np.asarray(attributes, dtype=np.float64)
        n = attributes.shape[0]
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        keep = src != dst
        src, dst = src[keep], dst[keep]
        rows = np.concatenate([src, dst])
        cols = np.concatenate([dst, src])
        adj = sp.coo_array(
            (np.ones(rows.size, dtype=np.float64), (rows, cols)), shape=(n, n)
        ).tocsr()
        adj.sum_duplicates()
        adj.data[:] = 1.0
        adj.sort_indices()
        return cls(adjacency=adj, attributes=attributes)

    @property
    def n(self) -> int:
        return self.attributes.shape[0]

    @property
    def f(self) -> int:
        return self.attributes.shape[1]

    @property
    def m(self) -> int:
        """Undirected edge count."""
        return self.adjacency.nnz // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.adjacency.indptr)

    @cached_property
    def edge_keys(self) -> np.ndarray:
        """Sorted ``i * n + j`` keys of every directed edge, for vectorized membership tests."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        return rows * self.n + self.adjacency.indices.astype(np.int64)

    def neighbors(self, node: int) -> np.ndarray:
        adj = self.adjacency
        return adj.indices[adj.indptr[node] : adj.indptr[node + 1]]

    def has_edges(self, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
        """Elementwise edge membership for broadcastable ``src`` / ``dst`` id arrays."""
        keys = np.asarray(src, dtype=np.int64) * self.n + np.asarray(dst, dtype=np.int64)
        edge_keys = self.edge_keys
        if edge_keys.size == 0:
            return np.zeros(keys.shape, dtype=bool)
        pos = np.searchsorted(edge_keys, keys)
        pos = np.minimum(pos, edge_keys.size - 1)
        return edge_keys[pos] == keys

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Undirected edges as (i, j) arrays with i < j, in row-major order."""
        coo = sp.triu(self.adjacency, k=1, format="coo")
        order = np.lexsort((coo.col, coo.row))
        return coo.row[order].astype(np.int64), coo.col[order].astype(np.int64)

    def with_adjacency(self, adjacency: sp.csr_array) -> AttributedGraph:
        return AttributedGraph(adjacency=adjacency, attributes=self.attributes)

    def with_attributes(self, attributes: np.ndarray) -> AttributedGraph:
        return AttributedGraph(adjacency=self.adjacency, attributes=attributes)


class AnomalyLabels(BaseModel):
    """Per-node ground truth.

    Attributes:
        labels (np.ndarray): One :class:`AnomalyKind` value per node.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    labels: np.ndarray

    @field_validator("labels", mode="before")
    def _as_kind_vector(cls, v: Any) -> np.ndarray:
        array = np.asarray(v, dtype=np.int8)
        if array.ndim != 1:
            msg = "labels must be a vector"
            raise ValueError(msg)
        valid = {int(kind) for kind in AnomalyKind}
        if not set(np.unique(array).tolist()) <= valid:
            msg = f"labels must take values in {sorted(valid)}"
            raise ValueError(msg)
        return array

    @classmethod
    def normal(cls, n: int) -> AnomalyLabels:
        return cls(labels=np.zeros(n, dtype=np.int8))

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    @property
    def binary(self) -> np.ndarray:
        """y_i in {0, 1}: 1 for any anomaly kind."""
        return (self.labels != AnomalyKind.NORMAL).astype(np.int64)

    @property
    def anomaly_count(self) -> int:
        return int(np.count_nonzero(self.labels))

    def count(self, kind: AnomalyKind) -> int:
        return int(np.count_nonzero(self.labels == kind))

    def merge(self, other: AnomalyLabels) -> AnomalyLabels:
        """Overlay ``other``'s anomaly flags onto these labels."""
        if other.n != self.n:
            msg = f"cannot merge labels of length {other.n} into {self.n}"
            raise ValueError(msg)
        merged = np.where(other.labels != AnomalyKind.NORMAL, other.labels, self.labels)
        return AnomalyLabels(labels=merged)
