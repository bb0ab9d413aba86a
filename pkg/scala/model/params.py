from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np

from ..constants.nn import PRELU_INIT
from ..enums import View
from ..errors import CheckpointError
from ..nn import Parameter, load_checkpoint, save_checkpoint, xavier_init

__all__ = ("ModelParams",)


class ModelParams:
    """Every trainable tensor of the two-view contrastive network.

    Each view owns one encoder weight read by both its GCN and its target MLP, and one PReLU
    slope shared by those two activation sites. The bilinear discriminator is shared by both
    views; the attention gate belongs to the spar view.

    Attributes:
        weight (Parameter): Dense-view encoder weight, f x d.
        weight_hat (Parameter): Spar-view encoder weight, f x d.
        disc (Parameter): Discriminator weight, d x d.
        attn_weight (Parameter): Attention gate weight, P x P.
        attn_bias (Parameter): Attention gate bias, P.
        slope (Parameter): Dense-view PReLU slope.
        slope_hat (Parameter): Spar-view PReLU slope.
    """

    NAMES = ("W", "W_hat", "W_d", "W_s", "b", "slope", "slope_hat")

    def __init__(
        self,
        weight: Parameter,
        weight_hat: Parameter,
        disc: Parameter,
        attn_weight: Parameter,
        attn_bias: Parameter,
        slope: Parameter,
        slope_hat: Parameter,
    ) -> None:
        self.weight = weight
        self.weight_hat = weight_hat
        self.disc = disc
        self.attn_weight = attn_weight
        self.attn_bias = attn_bias
        self.slope = slope
        self.slope_hat = slope_hat

    def __repr__(self) -> str:
        return (
            f"ModelParams(f={self.feature_dim}, d={self.embedding_dim}, P={self.subgraph_size})"
        )

    @classmethod
    def init(
        cls, feature_dim: int, embedding_dim: int, subgraph_size: int, rng: np.random.Generator
    ) -> ModelParams:
        """Xavier-initialize the weights, zero the gate bias and set both slopes to 0.25."""
        return cls(
            weight=Parameter("W", xavier_init(feature_dim, embedding_dim, rng)),
            weight_hat=Parameter("W_hat", xavier_init(feature_dim, embedding_dim, rng)),
            disc=Parameter("W_d", xavier_init(embedding_dim, embedding_dim, rng)),
            attn_weight=Parameter("W_s", xavier_init(subgraph_size, subgraph_size, rng)),
            attn_bias=Parameter("b", np.zeros(subgraph_size)),
            slope=Parameter("slope", PRELU_INIT),
            slope_hat=Parameter("slope_hat", PRELU_INIT),
        )

    @property
    def feature_dim(self) -> int:
        return self.weight.shape[0]

    @property
    def embedding_dim(self) -> int:
        return self.weight.shape[1]

    @property
    def subgraph_size(self) -> int:
        return self.attn_bias.shape[0]

    def parameters(self) -> list[Parameter]:
        return [
            self.weight,
            self.weight_hat,
            self.disc,
            self.attn_weight,
            self.attn_bias,
            self.slope,
            self.slope_hat,
        ]

    def view_weights(self, view: View) -> tuple[Parameter, Parameter]:
        """The (encoder weight, PReLU slope) pair a view's GCN and MLP both read."""
        if view is View.DENSE:
            return self.weight, self.slope
        return self.weight_hat, self.slope_hat

    def zero_grad(self) -> None:
        for param in self.parameters():
            param.zero_grad()

    def copy(self) -> ModelParams:
        """Deep copy of values and optimizer state."""
        copies = []
        for param in self.parameters():
            clone = Parameter(param.name, param.value)
            clone.adam_m = param.adam_m.copy()
            clone.adam_v = param.adam_v.copy()
            clone.step_count = param.step_count
            copies.append(clone)
        return ModelParams(*copies)

    def save(self, path: Path | str, *, meta: dict[str, Any] | None = None) -> None:
        save_checkpoint(self.parameters(), path, meta=meta)

    @classmethod
    def load(cls, path: Path | str) -> tuple[ModelParams, dict[str, Any]]:
        """Read parameters back from :meth:`save` output.

        Raises:
            CheckpointError: If a parameter is missing or shapes are inconsistent.
        """
        params, meta = load_checkpoint(path)
        missing = [name for name in cls.NAMES if name not in params]
        if missing:
            raise CheckpointError(str(path), f"missing parameters {missing}")

        model = cls(*(params[name] for name in cls.NAMES))
        f, d, p = model.feature_dim, model.embedding_dim, model.subgraph_size
        expected = {
            "W": (f, d),
            "W_hat": (f, d),
            "W_d": (d, d),
            "W_s": (p, p),
            "b": (p,),
            "slope": (),
            "slope_hat": (),
        }
        for param in model.parameters():
            if param.shape != expected[param.name]:
                raise CheckpointError(
                    str(path), f"{param.name} has shape {param.shape}, expected {expected[param.name]}"
                )
        return model, meta
