from __future__ import annotations

import csv
from typing import TYPE_CHECKING

import numpy as np
from loguru import logger

from ..errors import AttributeParseError, MalformedInputError
from ..models import AnomalyLabels, AttributedGraph

if TYPE_CHECKING:
    from pathlib import Path

__all__ = (
    "load_graph",
    "load_labels",
    "read_attributes",
    "read_edge_list",
    "save_edge_list",
    "save_graph",
    "save_labels",
)


def read_edge_list(
    path: Path | str, *, n_nodes: int | None = None
) -> tuple[np.ndarray, np.ndarray, int]:
    """Read a whitespace-separated ``src dst`` edge list with 0-based ids.

    Blank lines and lines starting with ``#`` are skipped. With ``n_nodes`` every id must
    also be below it.

    Returns:
        tuple[np.ndarray, np.ndarray, int]: Source ids, destination ids and the number of
            self-loop lines that were dropped.
    """
    src: list[int] = []
    dst: list[int] = []
    self_loops = 0
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split()
            if len(parts) != 2:
                raise MalformedInputError(str(path), lineno, f"expected 2 ids, got {len(parts)}")
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError as e:
                raise MalformedInputError(str(path), lineno, "node ids must be integers") from e
            if i < 0 or j < 0:
                raise MalformedInputError(str(path), lineno, "node ids must be non-negative")
            if n_nodes is not None and max(i, j) >= n_nodes:
                msg = f"edge ({i}, {j}) references a node >= {n_nodes} (attribute rows)"
                raise MalformedInputError(str(path), lineno, msg)
            if i == j:
                self_loops += 1
                continue
            src.append(i)
            dst.append(j)
    return np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64), self_loops


def _locate_bad_cell(path: Path | str) -> AttributeParseError | None:
    with open(path, encoding="utf-8", newline="") as f:
        for row, cells in enumerate(csv.reader(f)):
            for col, cell in enumerate(cells):
                try:
                    value = float(cell)
                except ValueError:
                    return AttributeParseError(str(path), row, col, cell)
                if not np.isfinite(value):
                    return AttributeParseError(str(path), row, col, cell)
    return None


def read_attributes(path: Path | str) -> np.ndarray:
    """Read an n x f CSV of floats, one row per node."""
    try:
        attrs = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    except ValueError as e:
        error = _locate_bad_cell(path)
        if error is not None:
            raise error from e
        raise MalformedInputError(str(path), 0, str(e)) from e
    if not np.isfinite(attrs).all():
        error = _locate_bad_cell(path)
        if error is not None:
            raise error
    return attrs


def load_graph(edges_path: Path | str, attrs_path: Path | str) -> AttributedGraph:
    """Load an attributed graph from an edge list and an attribute CSV.

    Args:
        edges_path: The edge list, one ``src<TAB>dst`` pair per line.
        attrs_path: The attribute CSV; its row count fixes n.

    Returns:
        AttributedGraph: The deduplicated, symmetric graph.
    """
    attrs = read_attributes(attrs_path)
    src, dst, self_loops = read_edge_list(edges_path, n_nodes=attrs.shape[0])
    if self_loops:
        logger.warning(f"Dropped {self_loops} self-loop lines from {edges_path}")

    graph = AttributedGraph.from_edges(src, dst, attrs)
    logger.debug(f"Loaded graph with n={graph.n}, m={graph.m}, f={graph.f}")
    return graph


def save_edge_list(graph: AttributedGraph, path: Path | str) -> None:
    """Write every undirected edge once as ``i<TAB>j`` with i < j."""
    src, dst = graph.edges()
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.writelines(f"{i}\t{j}\n" for i, j in zip(src.tolist(), dst.tolist(), strict=True))


def save_graph(graph: AttributedGraph, edges_path: Path | str, attrs_path: Path | str) -> None:
    """Write a graph in the canonical edge-list + CSV formats (LF newlines)."""
    save_edge_list(graph, edges_path)
    np.savetxt(attrs_path, graph.attributes, fmt="%.17g", delimiter=",", newline="\n")


def save_labels(labels: AnomalyLabels, path: Path | str) -> None:
    """Write ``node_id,label`` rows (0 normal, 1 structural, 2 attribute)."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("node_id,label\n")
        f.writelines(f"{i},{y}\n" for i, y in enumerate(labels.labels.tolist()))


def load_labels(path: Path | str) -> AnomalyLabels:
    """Read a labels file written by :func:`save_labels`."""
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != ["node_id", "label"]:
            raise MalformedInputError(str(path), 1, "expected header 'node_id,label'")
        values: dict[int, int] = {}
        for lineno, cells in enumerate(reader, start=2):
            try:
                node, label = int(cells[0]), int(cells[1])
            except (ValueError, IndexError) as e:
                raise MalformedInputError(str(path), lineno, "expected 'node_id,label'") from e
            values[node] = label
    if sorted(values) != list(range(len(values))):
        raise MalformedInputError(str(path), 0, "node ids must cover 0..n-1 exactly once")
    return AnomalyLabels(labels=[values[i] for i in range(len(values))])
