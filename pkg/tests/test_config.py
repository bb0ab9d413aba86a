from __future__ import annotations

from pathlib import Path

import pytest
from pydantic import ValidationError

from scala.enums import SparTarget
from scala.models import InjectionConfig, RunConfig, TrainConfig


def test_defaults() -> None:
    cfg = TrainConfig()
    assert (cfg.batch_size, cfg.subgraph_size, cfg.embedding_dim, cfg.rounds) == (300, 4, 64, 256)
    assert cfg.spar_target is SparTarget.HAT
    assert not cfg.full_row_normalization
    assert cfg.adam.learning_rate == cfg.learning_rate


def test_lambda_alias() -> None:
    assert TrainConfig.model_validate({"lambda": 0.4}).lambda_ == 0.4
    assert TrainConfig(lambda_=0.3).model_dump(by_alias=True)["lambda"] == 0.3


@pytest.mark.parametrize("field", ["gamma", "lambda"])
def test_weights_must_be_in_unit_interval(field: str) -> None:
    with pytest.raises(ValidationError, match="must lie in"):
        TrainConfig.model_validate({field: 1.5})


def test_equal_split() -> None:
    cfg = InjectionConfig.equal_split(100, clique_size=15)
    assert (cfg.clique_count, cfg.attribute_anomaly_count, cfg.total) == (3, 55, 100)
    with pytest.raises(ValidationError):
        InjectionConfig(clique_size=1)


def test_seed_propagates_to_sections() -> None:
    cfg = RunConfig.model_validate({"seed": 7, "train": {"epochs": 3}, "sampler": {"rng_seed": 2}})
    assert cfg.train.rng_seed == 7
    assert cfg.train.epochs == 3
    assert cfg.injection.rng_seed == 7
    # an explicit section seed wins
    assert cfg.sampler.rng_seed == 2


def test_subgraph_sizes_must_agree() -> None:
    with pytest.raises(ValidationError, match="disagree"):
        RunConfig.model_validate({"sampler": {"subgraph_size": 5}})


def test_with_overrides() -> None:
    cfg = RunConfig.model_validate({"seed": 1, "train": {"lambda": 0.5}})
    updated = cfg.with_overrides(seed=9, rounds=2, epochs=4, threads=3, output_dir=Path("out"))
    assert updated.seed == 9
    assert updated.train.rng_seed == updated.sampler.rng_seed == updated.injection.rng_seed == 9
    assert (updated.train.rounds, updated.train.epochs, updated.train.threads) == (2, 4, 3)
    assert updated.train.lambda_ == 0.5
    assert updated.output_dir == Path("out")
    assert updated.checkpoint_path == Path("out") / "checkpoint.json"
    assert cfg.with_overrides() == cfg


def test_batch_needs_two_targets() -> None:
    with pytest.raises(ValidationError, match="batch_size"):
        TrainConfig(batch_size=1)
    assert TrainConfig(batch_size=2).batch_size == 2
