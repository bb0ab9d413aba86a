from __future__ import annotations

from collections.abc import Callable

import numpy as np
import pytest

from scala.errors import ConfigError
from scala.models import AttributedGraph
from scala.sparsify import edge_similarities, save_similarities, spar_scores, sparsify


def _dense_oracle(graph: AttributedGraph, epsilon: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Loop-based similarity matrix, sparsified adjacency and scores."""
    n = graph.n
    A = graph.adjacency.toarray()
    X = graph.attributes
    S = np.zeros((n, n))
    for i in range(n):
        nbrs = [j for j in range(n) if A[i, j]]
        if not nbrs:
            continue
        raw = {j: float(X[i] @ X[j]) for j in nbrs}
        lo, hi = min(raw.values()), max(raw.values())
        for j in nbrs:
            S[i, j] = 1.0 if hi == lo else (raw[j] - lo) / (hi - lo)
    spar = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if A[i, j] and S[i, j] > epsilon and S[j, i] > epsilon:
                spar[i, j] = 1.0
    scores = np.sqrt(((A - spar) ** 2).sum(axis=1))
    return S, spar, scores


def test_matches_dense_oracle(make_random_graph: Callable[..., AttributedGraph]) -> None:
    rng = np.random.default_rng(2024)
    for _ in range(100):
        n = int(rng.integers(2, 51))
        f = int(rng.integers(1, 17))
        graph = make_random_graph(rng, n, f, float(rng.uniform(0.05, 0.5)))
        epsilon = float(rng.uniform(0.0, 1.0))

        S, spar, scores = _dense_oracle(graph, epsilon)
        sim = edge_similarities(graph)
        view = sparsify(graph, sim, epsilon)

        assert np.abs(sim.normalized_matrix().toarray() - S).max(initial=0.0) < 1e-12
        np.testing.assert_array_equal(view.adjacency.toarray(), spar)
        assert np.abs(spar_scores(graph, view) - scores).max(initial=0.0) < 1e-12


def test_sparsified_view_is_symmetric_subgraph(planted: tuple[AttributedGraph, np.ndarray]) -> None:
    graph, _ = planted
    view = sparsify(graph, edge_similarities(graph), 0.3)
    spar = view.as_graph(graph)
    assert (spar.adjacency != spar.adjacency.T).nnz == 0
    src, dst = spar.edges()
    assert graph.has_edges(src, dst).all()
    np.testing.assert_array_equal(view.removed_count, graph.degrees - spar.degrees)


def test_epsilon_nesting(planted: tuple[AttributedGraph, np.ndarray]) -> None:
    graph, _ = planted
    sim = edge_similarities(graph)
    previous = None
    for epsilon in (0.0, 0.05, 0.1, 0.3, 0.6, 1.0):
        kept = sparsify(graph, sim, epsilon).adjacency.toarray()
        if previous is not None:
            assert (kept <= previous).all()
        previous = kept
    # the comparison is strict, so nothing survives epsilon = 1
    assert previous is not None and not previous.any()


def test_uniform_neighborhood_normalizes_to_one() -> None:
    # star whose leaves all have the same attributes as seen from the hub
    attrs = np.array([[1.0, 0.0], [2.0, 0.0], [2.0, 0.0], [2.0, 0.0]])
    graph = AttributedGraph.from_edges(np.array([0, 0, 0]), np.array([1, 2, 3]), attrs)
    sim = edge_similarities(graph)
    np.testing.assert_array_equal(sim.normalized, np.ones(6))
    view = sparsify(graph, sim, 0.99)
    assert view.m == 3


def test_isolated_nodes_score_zero() -> None:
    attrs = np.eye(4)
    graph = AttributedGraph.from_edges(np.array([0]), np.array([1]), attrs)
    view = sparsify(graph, edge_similarities(graph), 0.5)
    scores = spar_scores(graph, view)
    assert scores[2] == scores[3] == 0.0
    assert np.isnan(edge_similarities(graph).mean_per_node()[2])


def test_full_row_normalization_bounds(planted: tuple[AttributedGraph, np.ndarray]) -> None:
    graph, _ = planted
    sim = edge_similarities(graph, full_row=True)
    assert sim.full_row
    assert ((sim.normalized >= 0.0) & (sim.normalized <= 1.0)).all()
    X = graph.attributes
    full = X @ X.T
    np.testing.assert_allclose(sim.row_max, full.max(axis=1))
    np.testing.assert_allclose(sim.row_min, full.min(axis=1))


@pytest.mark.parametrize("epsilon", [-0.1, 1.5])
def test_epsilon_out_of_range(toy_graph: AttributedGraph, epsilon: float) -> None:
    with pytest.raises(ConfigError):
        sparsify(toy_graph, edge_similarities(toy_graph), epsilon)


def test_save_similarities(tmp_path, toy_graph: AttributedGraph) -> None:
    sim = edge_similarities(toy_graph)
    save_similarities(sim, tmp_path / "sim.csv")
    lines = (tmp_path / "sim.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "i,j,raw,normalized"
    assert len(lines) == 1 + 2 * toy_graph.m
