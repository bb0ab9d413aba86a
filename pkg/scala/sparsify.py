from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import scipy.sparse as sp
from loguru import logger

from .errors import ConfigError
from .models import AttributedGraph, SimilarityIndex, SparsifiedView

if TYPE_CHECKING:
    from pathlib import Path

__all__ = ("edge_similarities", "save_similarities", "spar_scores", "sparsify")

_FULL_ROW_CHUNK = 1024


def _full_row_extremes(attributes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = attributes.shape[0]
    lo = np.empty(n)
    hi = np.empty(n)
    for start in range(0, n, _FULL_ROW_CHUNK):
        block = attributes[start : start + _FULL_ROW_CHUNK] @ attributes.T
        lo[start : start + block.shape[0]] = block.min(axis=1)
        hi[start : start + block.shape[0]] = block.max(axis=1)
    return lo, hi


def edge_similarities(graph: AttributedGraph, *, full_row: bool = False) -> SimilarityIndex:
    """Dot similarity of every edge's endpoints, row min-max normalized.

    By default the min and max of row i run over i's incident edges only; a row whose
    extremes coincide normalizes to 1.0. With ``full_row`` they run over all n columns of
    X X^T instead.

    Args:
        graph: The graph.
        full_row: Normalize over full rows rather than incident edges.

    Returns:
        SimilarityIndex: One raw and one normalized value per directed edge, in CSR order.
    """
    adj = graph.adjacency
    X = graph.attributes
    degrees = graph.degrees
    rows = np.repeat(np.arange(graph.n, dtype=np.int64), degrees)
    cols = adj.indices.astype(np.int64)
    raw = np.einsum("ij,ij->i", X[rows], X[cols])

    if full_row:
        row_min, row_max = _full_row_extremes(X)
    else:
        row_min = np.zeros(graph.n)
        row_max = np.zeros(graph.n)
        nonempty = degrees > 0
        if nonempty.any():
            starts = adj.indptr[:-1][nonempty]
            row_min[nonempty] = np.minimum.reduceat(raw, starts)
            row_max[nonempty] = np.maximum.reduceat(raw, starts)

    lo = row_min[rows]
    span = row_max[rows] - lo
    flat = span == 0
    normalized = np.where(flat, 1.0, (raw - lo) / np.where(flat, 1.0, span))
    normalized = np.clip(normalized, 0.0, 1.0)

    return SimilarityIndex(
        rows=rows,
        cols=cols,
        raw=raw,
        normalized=normalized,
        row_min=row_min,
        row_max=row_max,
        full_row=full_row,
    )


def sparsify(graph: AttributedGraph, sim: SimilarityIndex, epsilon: float) -> SparsifiedView:
    """Keep edge {i, j} only when S_ij > epsilon and S_ji > epsilon.

    Args:
        graph: The graph ``sim`` was computed on.
        sim: Its similarity index.
        epsilon: Threshold in [0, 1]; the comparison is strict.

    Returns:
        SparsifiedView: A^spar and the per-node count of deleted incident edges.
    """
    if not 0.0 <= epsilon <= 1.0:
        msg = f"epsilon {epsilon} must lie in [0, 1]"
        raise ConfigError(msg)

    adj = graph.adjacency
    survive = (sim.normalized > epsilon).astype(np.float64)
    directed = sp.csr_array((survive, adj.indices, adj.indptr), shape=adj.shape)
    kept = sp.csr_array(directed.multiply(directed.T))
    kept.eliminate_zeros()
    kept.sum_duplicates()
    kept.sort_indices()
    kept.data[:] = 1.0

    removed = graph.degrees - np.diff(kept.indptr)
    logger.debug(
        f"Sparsified with epsilon={epsilon}: kept {kept.nnz // 2} of {graph.m} edges"
    )
    return SparsifiedView(adjacency=kept, removed_count=removed.astype(np.int64), epsilon=epsilon)


def spar_scores(graph: AttributedGraph, view: SparsifiedView) -> np.ndarray:
    """Frobenius norm of every node's adjacency-row difference, sqrt(removed incident edges)."""
    if view.removed_count.shape != (graph.n,):
        msg = f"view covers {view.removed_count.shape[0]} nodes, graph has {graph.n}"
        raise ConfigError(msg)
    return np.sqrt(view.removed_count.astype(np.float64))


def save_similarities(sim: SimilarityIndex, path: Path | str) -> None:
    """Write ``i,j,raw,normalized`` per directed edge."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("i,j,raw,normalized\n")
        f.writelines(
            f"{i},{j},{r!r},{s!r}\n"
            for i, j, r, s in zip(
                sim.rows.tolist(),
                sim.cols.tolist(),
                sim.raw.tolist(),
                sim.normalized.tolist(),
                strict=True,
            )
        )
