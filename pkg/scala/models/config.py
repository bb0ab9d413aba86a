from __future__ import annotations

from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..constants.graph import DEFAULT_CANDIDATE_POOL, DEFAULT_CLIQUE_SIZE, DEFAULT_RESTART_PROB
from ..constants.nn import ADAM_BETA1, ADAM_BETA2, ADAM_EPS
from ..enums import SparTarget
from ..errors import ConfigError

__all__ = (
    "AdamConfig",
    "DatasetPaths",
    "InjectionConfig",
    "RunConfig",
    "SamplerConfig",
    "TrainConfig",
)


class InjectionConfig(BaseModel):
    """Benchmark anomaly injection settings.

    Attributes:
        clique_size (int): Nodes per injected clique (q).
        clique_count (int): Number of cliques (t).
        attribute_anomaly_count (int): Number of attribute-swap victims.
        candidate_pool_size (int): Candidates examined per victim (k).
        rng_seed (int): Seed of the injection streams.
    """

    model_config = ConfigDict(frozen=True)

    clique_size: int = Field(DEFAULT_CLIQUE_SIZE, ge=2)
    clique_count: int = Field(0, ge=0)
    attribute_anomaly_count: int = Field(0, ge=0)
    candidate_pool_size: int = Field(DEFAULT_CANDIDATE_POOL, ge=1)
    rng_seed: int = Field(0, ge=0)

    @property
    def structural_count(self) -> int:
        return self.clique_size * self.clique_count

    @property
    def total(self) -> int:
        return self.structural_count + self.attribute_anomaly_count

    @classmethod
    def equal_split(
        cls,
        total: int,
        *,
        clique_size: int = DEFAULT_CLIQUE_SIZE,
        candidate_pool_size: int = DEFAULT_CANDIDATE_POOL,
        rng_seed: int = 0,
    ) -> InjectionConfig:
        """Split ``total`` anomalies evenly between cliques and attribute swaps.

        ``t = total // (2q)`` cliques; the remainder goes to attribute anomalies.
        """
        clique_count = total // (2 * clique_size)
        return cls(
            clique_size=clique_size,
            clique_count=clique_count,
            attribute_anomaly_count=total - clique_size * clique_count,
            candidate_pool_size=candidate_pool_size,
            rng_seed=rng_seed,
        )

    def check_fits(self, n: int) -> None:
        """Raise :class:`ConfigError` when the graph is too small for this config."""
        if self.total > n:
            msg = f"{self.total} anomalies requested but the graph has only {n} nodes"
            raise ConfigError(msg)


class SamplerConfig(BaseModel):
    """Random-walk-with-restart subgraph sampling settings.

    Attributes:
        subgraph_size (int): Nodes per sampled subgraph (P).
        restart_prob (float): Probability of jumping back to the target at each step.
        max_steps (int): Walk-step budget before padding kicks in.
        rng_seed (int): Base seed of the sampling lanes.
    """

    model_config = ConfigDict(frozen=True)

    subgraph_size: int = Field(4, ge=1)
    restart_prob: float = Field(DEFAULT_RESTART_PROB, gt=0.0, lt=1.0)
    max_steps: int = 100
    rng_seed: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_budget(self) -> SamplerConfig:
        if self.max_steps < self.subgraph_size:
            msg = f"max_steps ({self.max_steps}) must be at least subgraph_size ({self.subgraph_size})"
            raise ConfigError(msg)
        return self


class AdamConfig(BaseModel):
    """Adam hyperparameters; no weight decay."""

    model_config = ConfigDict(frozen=True)

    learning_rate: float = Field(0.001, gt=0.0)
    beta1: float = Field(ADAM_BETA1, gt=0.0, lt=1.0)
    beta2: float = Field(ADAM_BETA2, gt=0.0, lt=1.0)
    eps_stability: float = Field(ADAM_EPS, gt=0.0)


class TrainConfig(BaseModel):
    """Training and inference settings.

    Attributes:
        epochs (int): Training epochs (T); zero returns the initial parameters.
        batch_size (int): Targets per batch (B), at least 2 since negatives rotate within a batch.
        learning_rate (float): Adam step size.
        gamma (float): Weight of the spar-view in loss and contrastive score.
        lambda_ (float): Weight of the sparsification score in the fused score.
        epsilon (float): Sparsification threshold.
        subgraph_size (int): Nodes per sampled subgraph (P).
        rounds (int): Inference sampling rounds (R).
        embedding_dim (int): Embedding dimension (d).
        rng_seed (int): Seed of initialization, shuffling and sampling lanes.
        spar_target (SparTarget): Target embedding used by the spar-view discriminator.
        full_row_normalization (bool): Min-max normalize similarities over all n columns
            instead of a node's incident edges only.
        threads (int | None): Cap on parallel inference lanes, None for all cores.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    epochs: int = Field(100, ge=0)
    batch_size: int = Field(300, ge=2)
    learning_rate: float = Field(0.001, gt=0.0)
    gamma: float = 0.9
    lambda_: float = Field(0.2, alias="lambda")
    epsilon: float = Field(0.1, ge=0.0, le=1.0)
    subgraph_size: int = Field(4, ge=1)
    rounds: int = Field(256, ge=1)
    embedding_dim: int = Field(64, ge=1)
    rng_seed: int = Field(0, ge=0)
    spar_target: SparTarget = SparTarget.HAT
    full_row_normalization: bool = False
    threads: int | None = Field(None, ge=1)

    @field_validator("gamma", "lambda_")
    def _check_unit_interval(cls, v: float) -> float:
        if not 0.0 <= v <= 1.0:
            msg = f"weight {v} must lie in [0, 1]"
            raise ConfigError(msg)
        return v

    @property
    def adam(self) -> AdamConfig:
        return AdamConfig(learning_rate=self.learning_rate)


class DatasetPaths(BaseModel):
    """Locations of a dataset on disk."""

    model_config = ConfigDict(frozen=True)

    edges: Path
    attrs: Path
    labels: Path | None = None


class RunConfig(BaseModel):
    """Everything one CLI invocation needs.

    A top-level ``seed`` fills every nested ``rng_seed`` the file leaves unset.
    """

    model_config = ConfigDict(frozen=True)

    dataset: DatasetPaths | None = None
    injection: InjectionConfig = InjectionConfig()
    sampler: SamplerConfig = SamplerConfig()
    train: TrainConfig = TrainConfig()
    output_dir: Path = Path("runs/default")
    checkpoint: Path | None = None
    seed: int = Field(0, ge=0)

    @model_validator(mode="before")
    def _propagate_seed(cls, v: Any) -> Any:
        if not isinstance(v, dict) or "seed" not in v:
            return v
        v = dict(v)
        for section in ("injection", "sampler", "train"):
            nested = v.get(section)
            if nested is None:
                v[section] = {"rng_seed": v["seed"]}
            elif isinstance(nested, dict):
                v[section] = {"rng_seed": v["seed"], **nested}
        return v

    @model_validator(mode="after")
    def _check_subgraph_size(self) -> RunConfig:
        if self.sampler.subgraph_size != self.train.subgraph_size:
            msg = (
                f"sampler.subgraph_size ({self.sampler.subgraph_size}) and "
                f"train.subgraph_size ({self.train.subgraph_size}) disagree"
            )
            raise ConfigError(msg)
        return self

    @property
    def checkpoint_path(self) -> Path:
        return self.checkpoint or self.output_dir / "checkpoint.json"

    def with_overrides(
        self,
        *,
        seed: int | None = None,
        rounds: int | None = None,
        epochs: int | None = None,
        threads: int | None = None,
        output_dir: Path | None = None,
    ) -> RunConfig:
        """Apply command-line overrides and re-validate."""
        data = self.model_dump(by_alias=True)
        if seed is not None:
            data["seed"] = seed
            for section in ("injection", "sampler", "train"):
                data[section]["rng_seed"] = seed
        if rounds is not None:
            data["train"]["rounds"] = rounds
        if epochs is not None:
            data["train"]["epochs"] = epochs
        if threads is not None:
            data["train"]["threads"] = threads
        if output_dir is not None:
            data["output_dir"] = output_dir
        return RunConfig.model_validate(data)

    @classmethod
    def from_preset(
        cls,
        name: str,
        dataset: DatasetPaths | None = None,
        *,
        seed: int = 0,
        output_dir: Path | None = None,
    ) -> RunConfig:
        """Build a run from a shipped dataset preset."""
        from ..presets import load_preset  # noqa: PLC0415

        preset = load_preset(name)
        return cls(
            dataset=dataset,
            injection=preset.injection_config(seed=seed),
            sampler=SamplerConfig(subgraph_size=preset.subgraph_size, rng_seed=seed),
            train=preset.train_config(seed=seed),
            output_dir=output_dir or Path("runs") / preset.name,
            seed=seed,
        )
