from __future__ import annotations

import numpy as np
import pytest
from scipy.sparse.csgraph import connected_components

from scala.enums import Polarity, View
from scala.errors import ConfigError
from scala.models import AttributedGraph, SamplerConfig
from scala.sampler import build_pair, build_pairs, make_batch_pairs, rwr_sample
from scala.utils import lane_rng


def test_rwr_sample_shape_and_locality(planted: tuple[AttributedGraph, np.ndarray]) -> None:
    graph, _ = planted
    cfg = SamplerConfig(subgraph_size=4)
    _, component = connected_components(graph.adjacency, directed=False)
    rng = np.random.default_rng(0)
    for target in range(graph.n):
        ids = rwr_sample(graph, target, cfg, rng)
        assert len(ids) == 4
        assert ids[0] == target
        distinct = list(dict.fromkeys(ids))
        # padding repeats the target only
        assert all(i == target for i in ids[len(distinct) :])
        assert all(component[i] == component[target] for i in ids)


def test_rwr_sample_orderings_are_balanced() -> None:
    triangle = AttributedGraph.from_edges(np.array([0, 0, 1]), np.array([1, 2, 2]), np.ones((3, 2)))
    cfg = SamplerConfig(subgraph_size=3)
    rng = np.random.default_rng(2024)
    runs = 10_000
    seen = [tuple(rwr_sample(triangle, 0, cfg, rng)) for _ in range(runs)]
    assert set(seen) == {(0, 1, 2), (0, 2, 1)}
    assert abs(seen.count((0, 1, 2)) / runs - 0.5) <= 0.02


def test_rwr_sample_isolated_target() -> None:
    graph = AttributedGraph.from_edges(np.array([0]), np.array([1]), np.ones((3, 2)))
    assert rwr_sample(graph, 2, SamplerConfig(subgraph_size=4)) == [2, 2, 2, 2]


def test_rwr_sample_small_component_pads() -> None:
    graph = AttributedGraph.from_edges(np.array([0]), np.array([1]), np.ones((3, 2)))
    assert rwr_sample(graph, 0, SamplerConfig(subgraph_size=4)) == [0, 1, 0, 0]


def test_rwr_sample_is_deterministic(toy_graph: AttributedGraph) -> None:
    cfg = SamplerConfig(subgraph_size=4, rng_seed=11)
    a = [rwr_sample(toy_graph, t, cfg, lane_rng(11, t)) for t in range(toy_graph.n)]
    b = [rwr_sample(toy_graph, t, cfg, lane_rng(11, t)) for t in range(toy_graph.n)]
    assert a == b
    assert rwr_sample(toy_graph, 3, cfg) == rwr_sample(toy_graph, 3, cfg)


def test_rwr_sample_rejects_bad_target(toy_graph: AttributedGraph) -> None:
    with pytest.raises(ConfigError):
        rwr_sample(toy_graph, 10, SamplerConfig())


def test_build_pair_anonymizes_and_normalizes(toy_graph: AttributedGraph) -> None:
    pair = build_pair(toy_graph, [0, 1, 2, 3], Polarity.POSITIVE, View.DENSE)
    np.testing.assert_array_equal(pair.attrs[0], np.zeros(toy_graph.f))
    np.testing.assert_array_equal(pair.attrs[1:], toy_graph.attributes[[1, 2, 3]])
    np.testing.assert_allclose(pair.adj_norm, pair.adj_norm.T)

    # triangle 0-1-2 plus edge 2-3, self-loops added before normalization
    A = np.array(
        [[1, 1, 1, 0], [1, 1, 1, 0], [1, 1, 1, 1], [0, 0, 1, 1]], dtype=np.float64
    )
    d = 1.0 / np.sqrt(A.sum(axis=1))
    np.testing.assert_allclose(pair.adj_norm, d[:, None] * A * d[None, :])


def test_build_pair_similarity_vector(toy_graph: AttributedGraph) -> None:
    ids = [4, 3, 5, 7]
    pair = build_pair(toy_graph, ids, Polarity.NEGATIVE, View.SPAR, contrast_target=0)
    X = toy_graph.attributes
    raw = X[ids] @ X[0]
    expected = (raw - raw.min()) / (raw.max() - raw.min())
    np.testing.assert_allclose(pair.sim_vector, expected)
    assert pair.view is View.SPAR and pair.polarity is Polarity.NEGATIVE


def test_singleton_pair() -> None:
    graph = AttributedGraph.from_edges(np.array([0]), np.array([1]), np.ones((2, 3)))
    pair = build_pair(graph, [0], Polarity.POSITIVE, View.DENSE)
    np.testing.assert_array_equal(pair.adj_norm, np.ones((1, 1)))
    np.testing.assert_array_equal(pair.sim_vector, np.ones(1))


def test_padding_keeps_only_self_loops() -> None:
    graph = AttributedGraph.from_edges(np.array([0]), np.array([1]), np.ones((3, 2)))
    pair = build_pair(graph, [0, 1, 0, 0], Polarity.POSITIVE, View.DENSE)
    expected = np.eye(4)
    expected[:2, :2] = 0.5
    np.testing.assert_allclose(pair.adj_norm, expected)


def test_make_batch_pairs_rotates_negatives(planted: tuple[AttributedGraph, np.ndarray]) -> None:
    graph, _ = planted
    targets = np.array([5, 17, 42, 99, 150])
    pairs = make_batch_pairs(graph, graph, targets, SamplerConfig(), np.random.default_rng(1))

    for pos, neg in ((pairs.pos_dense, pairs.neg_dense), (pairs.pos_spar, pairs.neg_spar)):
        assert len(pos) == len(neg) == 5
        np.testing.assert_array_equal(pos.node_ids[:, 0], targets)
        np.testing.assert_array_equal(neg.node_ids, np.roll(pos.node_ids, -1, axis=0))
        np.testing.assert_array_equal(neg.targets, targets)
        np.testing.assert_array_equal(neg.adj_norm, np.roll(pos.adj_norm, -1, axis=0))
        assert ((neg.sim_vector >= 0.0) & (neg.sim_vector <= 1.0)).all()
        np.testing.assert_array_equal(neg.attrs[:, 0], 0.0)


def test_make_batch_pairs_needs_two_targets(toy_graph: AttributedGraph) -> None:
    with pytest.raises(ConfigError):
        make_batch_pairs(toy_graph, toy_graph, np.array([0]), SamplerConfig(), np.random.default_rng(0))


def test_sampler_config_budget() -> None:
    with pytest.raises(ValueError, match="max_steps"):
        SamplerConfig(subgraph_size=8, max_steps=4)
