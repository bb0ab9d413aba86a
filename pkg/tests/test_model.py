from __future__ import annotations

import numpy as np
import pytest

from scala.enums import SparTarget, View
from scala.errors import CheckpointError, ConfigError, ShapeMismatchError
from scala.model import (
    ModelParams,
    attention_gate,
    batch_loss,
    discriminate,
    embed_subgraph,
    embed_subgraph_backward,
    embed_subgraph_forward,
    embed_target,
    embed_target_backward,
    embed_target_forward,
    forward,
    loss_and_backward,
    propagate,
    readout_attn,
    readout_avg,
    score_batch,
)
from scala.models import AdamConfig, AttributedGraph, BatchPairs, PairBatch, SamplerConfig, ViewScores
from scala.nn import Adam, Parameter, grad_check, save_checkpoint
from scala.sampler import make_batch_pairs
from scala.sparsify import edge_similarities, sparsify


@pytest.fixture
def toy_step(toy_graph: AttributedGraph) -> tuple[ModelParams, BatchPairs, np.ndarray]:
    spar = sparsify(toy_graph, edge_similarities(toy_graph), 0.1).as_graph(toy_graph)
    pairs = make_batch_pairs(
        toy_graph, spar, np.arange(toy_graph.n), SamplerConfig(subgraph_size=4), np.random.default_rng(5)
    )
    params = ModelParams.init(toy_graph.f, 8, 4, np.random.default_rng(6))
    return params, pairs, toy_graph.attributes


def test_init_shapes() -> None:
    params = ModelParams.init(7, 5, 4, np.random.default_rng(0))
    assert [p.name for p in params.parameters()] == list(ModelParams.NAMES)
    assert params.weight.shape == params.weight_hat.shape == (7, 5)
    assert params.disc.shape == (5, 5)
    assert params.attn_weight.shape == (4, 4)
    assert not params.attn_bias.value.any()
    assert float(params.slope.value) == float(params.slope_hat.value) == 0.25


def test_readouts_and_discriminator() -> None:
    h = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 0.0]])
    np.testing.assert_allclose(readout_avg(h), [3.0, 2.0])

    zero_w = Parameter("W_s", np.zeros((3, 3)))
    zero_b = Parameter("b", np.zeros(3))
    np.testing.assert_allclose(attention_gate(np.ones(3), zero_w, zero_b), 0.5)
    # gates are not normalized, so a flat gate halves the sum
    np.testing.assert_allclose(readout_attn(h, np.ones(3), zero_w, zero_b), [4.5, 3.0])

    disc = Parameter("W_d", np.eye(2))
    score = discriminate(np.array([1.0, -1.0]), np.array([2.0, 2.0]), disc)
    assert score == pytest.approx(0.5)


def test_embed_subgraph_applies_prelu() -> None:
    weight = Parameter("W", np.array([[1.0], [-1.0]]))
    slope = Parameter("slope", 0.25)
    attrs = np.array([[0.0, 0.0], [1.0, 3.0]])
    adj = np.eye(2)
    np.testing.assert_allclose(embed_subgraph(attrs, adj, weight, slope), [[0.0], [-0.5]])


def test_propagate_rejects_shape_mismatch() -> None:
    weight = Parameter("W", np.zeros((3, 2)))
    with pytest.raises(ShapeMismatchError):
        propagate(np.zeros((4, 5)), np.eye(4), weight)
    with pytest.raises(ShapeMismatchError):
        propagate(np.zeros((4, 3)), np.eye(3), weight)


def test_batch_loss_weighting() -> None:
    scores = ViewScores(
        pos_dense=np.array([0.9, 0.8]),
        neg_dense=np.array([0.1, 0.3]),
        pos_spar=np.array([0.5, 0.5]),
        neg_spar=np.array([0.5, 0.5]),
    )
    assert batch_loss(scores, 1.0) == pytest.approx(np.log(2.0))
    dense = batch_loss(scores, 0.0)
    assert batch_loss(scores, 0.5) == pytest.approx(0.5 * dense + 0.5 * np.log(2.0))
    with pytest.raises(ConfigError):
        batch_loss(scores, 1.5)


@pytest.mark.parametrize("spar_target", [SparTarget.HAT, SparTarget.DENSE])
def test_gradients_match_finite_differences(
    toy_step: tuple[ModelParams, BatchPairs, np.ndarray], spar_target: SparTarget
) -> None:
    params, pairs, attributes = toy_step

    def closure() -> float:
        params.zero_grad()
        return loss_and_backward(params, pairs, attributes, 0.6, spar_target=spar_target)

    assert grad_check(closure, params.parameters(), probes=15) < 1e-4


def test_grad_check_catches_corrupted_gradient(
    toy_step: tuple[ModelParams, BatchPairs, np.ndarray],
) -> None:
    params, pairs, attributes = toy_step

    def closure() -> float:
        params.zero_grad()
        loss = loss_and_backward(params, pairs, attributes, 0.6)
        params.disc.grad *= 2.0
        return loss

    assert grad_check(closure, [params.disc], probes=10) > 0.1


def test_views_use_their_own_encoder(toy_step: tuple[ModelParams, BatchPairs, np.ndarray]) -> None:
    params, pairs, attributes = toy_step
    before = score_batch(params, pairs, attributes)

    params.weight_hat.value += 0.5
    after = score_batch(params, pairs, attributes)
    np.testing.assert_array_equal(after.pos_dense, before.pos_dense)
    np.testing.assert_array_equal(after.neg_dense, before.neg_dense)
    assert not np.allclose(after.pos_spar, before.pos_spar)

    # the dense target embedding feeds the spar discriminator only when asked to
    params.weight.value += 0.5
    hat = score_batch(params, pairs, attributes)
    np.testing.assert_array_equal(hat.pos_spar, after.pos_spar)
    shared = score_batch(params, pairs, attributes, spar_target=SparTarget.DENSE)
    assert not np.allclose(shared.pos_spar, hat.pos_spar)


def _shuffle_rows(batch: PairBatch, perm: np.ndarray) -> PairBatch:
    return batch.model_copy(
        update={
            "node_ids": batch.node_ids[:, perm],
            "attrs": batch.attrs[:, perm],
            "adj_norm": batch.adj_norm[:, perm][:, :, perm],
            "sim_vector": batch.sim_vector[:, perm],
        }
    )


# the target stays in row 0
_PERM = np.array([0, 3, 1, 2])


def test_average_readout_ignores_node_order(
    toy_step: tuple[ModelParams, BatchPairs, np.ndarray],
) -> None:
    params, pairs, attributes = toy_step
    permuted = pairs.model_copy(update={"pos_dense": _shuffle_rows(pairs.pos_dense, _PERM)})
    np.testing.assert_allclose(
        score_batch(params, permuted, attributes).pos_dense,
        score_batch(params, pairs, attributes).pos_dense,
        rtol=1e-12,
    )


def test_flat_attention_gate_ignores_node_order(
    toy_step: tuple[ModelParams, BatchPairs, np.ndarray],
) -> None:
    params, pairs, attributes = toy_step
    params.attn_weight.value[:] = 0.0
    assert not params.attn_bias.value.any()
    permuted = pairs.model_copy(
        update={
            "pos_spar": _shuffle_rows(pairs.pos_spar, _PERM),
            "neg_spar": _shuffle_rows(pairs.neg_spar, _PERM),
        }
    )
    before = score_batch(params, pairs, attributes)
    after = score_batch(params, permuted, attributes)
    np.testing.assert_allclose(after.pos_spar, before.pos_spar, rtol=1e-12)
    np.testing.assert_allclose(after.neg_spar, before.neg_spar, rtol=1e-12)


def test_scores_are_probabilities(toy_step: tuple[ModelParams, BatchPairs, np.ndarray]) -> None:
    params, pairs, attributes = toy_step
    scores, cache = forward(params, pairs, attributes)
    for name in ("pos_dense", "neg_dense", "pos_spar", "neg_spar"):
        values = getattr(scores, name)
        assert values.shape == (10,)
        assert ((values >= 0.0) & (values <= 1.0)).all()
    assert cache.spar_target is SparTarget.HAT
    contrast = scores.contrast(0.9)
    assert ((contrast >= -1.0) & (contrast <= 1.0)).all()


def test_params_save_and_load(tmp_path, toy_step: tuple[ModelParams, BatchPairs, np.ndarray]) -> None:
    params, _, _ = toy_step
    params.save(tmp_path / "ckpt.json", meta={"seed": 1})
    loaded, meta = ModelParams.load(tmp_path / "ckpt.json")
    assert meta == {"seed": 1}
    for a, b in zip(params.parameters(), loaded.parameters(), strict=True):
        assert a.name == b.name
        assert a.value.tobytes() == b.value.tobytes()

    copy = params.copy()
    copy.weight.value[0, 0] += 1.0
    assert copy.weight.value[0, 0] != params.weight.value[0, 0]


def test_params_load_checks_shapes(tmp_path, toy_step: tuple[ModelParams, BatchPairs, np.ndarray]) -> None:
    params, _, _ = toy_step
    tensors = params.parameters()
    tensors[2] = Parameter("W_d", np.zeros((3, 3)))
    save_checkpoint(tensors, tmp_path / "bad.json")
    with pytest.raises(CheckpointError, match="W_d"):
        ModelParams.load(tmp_path / "bad.json")

    save_checkpoint(tensors[:3], tmp_path / "short.json")
    with pytest.raises(CheckpointError, match="missing"):
        ModelParams.load(tmp_path / "short.json")


def test_embed_target_reads_raw_attributes(toy_step: tuple[ModelParams, BatchPairs, np.ndarray]) -> None:
    params, pairs, attributes = toy_step
    zero = embed_target(np.zeros((2, attributes.shape[1])), params.weight, params.slope)
    np.testing.assert_array_equal(zero, 0.0)

    x = attributes[pairs.targets]
    h = embed_target(x, params.weight, params.slope)
    assert h.shape == (10, 8)
    # the subgraph copy of the target is anonymized, the target embedding is not
    batch = pairs.pos_dense
    assert not batch.attrs[:, 0].any()
    np.testing.assert_array_equal(embed_target(batch.attrs[:, 0], params.weight, params.slope), 0.0)
    assert (np.abs(h).sum(axis=1) > 0).all()

    _, cache = forward(params, pairs, attributes)
    np.testing.assert_array_equal(cache.target, h)
    with pytest.raises(ShapeMismatchError):
        embed_target(np.zeros((2, attributes.shape[1] + 1)), params.weight, params.slope)


@pytest.mark.parametrize("view", [View.DENSE, View.SPAR])
@pytest.mark.parametrize("through_gcn", [True, False])
def test_encoder_weight_is_tied(view: View, through_gcn: bool) -> None:
    params = ModelParams.init(3, 4, 2, np.random.default_rng(1))
    weight, slope = params.view_weights(view)
    x = np.array([[0.5, -1.0, 2.0]])
    attrs = x[None]
    adj = np.eye(1)[None]

    def outputs() -> tuple[np.ndarray, np.ndarray]:
        return embed_subgraph(attrs, adj, weight, slope)[:, 0], embed_target(x, weight, slope)

    gcn, mlp = outputs()
    np.testing.assert_allclose(gcn, mlp)

    # the gradient reaches W through one path only
    if through_gcn:
        h, pre = embed_subgraph_forward(attrs, adj, weight, slope)
        embed_subgraph_backward(attrs, adj, pre, weight, slope, np.ones_like(h))
    else:
        h, pre = embed_target_forward(x, weight, slope)
        embed_target_backward(x, pre, weight, slope, np.ones_like(h))
    Adam(params.parameters(), AdamConfig(learning_rate=0.1)).step()

    gcn_after, mlp_after = outputs()
    assert not np.allclose(gcn_after, gcn)
    assert not np.allclose(mlp_after, mlp)
    np.testing.assert_allclose(gcn_after, mlp_after)
