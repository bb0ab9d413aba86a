from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from ..constants.graph import DEFAULT_CLIQUE_SIZE
from .config import InjectionConfig, TrainConfig

__all__ = ("DatasetPreset",)


class DatasetPreset(BaseModel):
    """Published hyperparameters of one benchmark dataset.

    Attributes:
        name (str): Dataset name.
        learning_rate (float): Adam step size.
        epochs (int): Training epochs.
        gamma (float): Spar-view weight.
        lambda_ (float): Sparsification-score weight.
        epsilon (float): Sparsification threshold.
        anomaly_count (int): Anomalies injected, split evenly between the two kinds.
        clique_size (int): Nodes per injected clique.
        subgraph_size (int): Nodes per sampled subgraph.
        embedding_dim (int): Embedding dimension.
        batch_size (int): Targets per batch.
        rounds (int): Inference rounds.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    name: str
    learning_rate: float
    epochs: int
    gamma: float
    lambda_: float = Field(alias="lambda")
    epsilon: float
    anomaly_count: int
    clique_size: int = DEFAULT_CLIQUE_SIZE
    subgraph_size: int = 4
    embedding_dim: int = 64
    batch_size: int = 300
    rounds: int = 256

    def train_config(self, *, seed: int = 0) -> TrainConfig:
        return TrainConfig(
            epochs=self.epochs,
            batch_size=self.batch_size,
            learning_rate=self.learning_rate,
            gamma=self.gamma,
            lambda_=self.lambda_,
            epsilon=self.epsilon,
            subgraph_size=self.subgraph_size,
            rounds=self.rounds,
            embedding_dim=self.embedding_dim,
            rng_seed=seed,
        )

    def injection_config(self, *, seed: int = 0) -> InjectionConfig:
        return InjectionConfig.equal_split(
            self.anomaly_count, clique_size=self.clique_size, rng_seed=seed
        )
