from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from ..models import AdamConfig
from .parameter import Parameter

__all__ = ("Adam", "adam_update")


def adam_update(
    value: np.ndarray,
    grad: np.ndarray,
    m: np.ndarray,
    v: np.ndarray,
    step: int,
    cfg: AdamConfig,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One bias-corrected Adam step, ``step`` counting from 1.

    Returns:
        tuple: The new value, first moment and second moment.
    """
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * grad * grad
    m_hat = m / (1.0 - cfg.beta1**step)
    v_hat = v / (1.0 - cfg.beta2**step)
    value = value - cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.eps_stability)
    return value, m, v


class Adam:
    """Adam over a fixed list of parameters.

    Args:
        params (Iterable[Parameter]): The parameters to update.
        cfg (AdamConfig): Hyperparameters.
    """

    def __init__(self, params: Iterable[Parameter], cfg: AdamConfig) -> None:
        self.params = list(params)
        self.cfg = cfg

    def zero_grad(self) -> None:
        for param in self.params:
            param.zero_grad()

    def step(self) -> None:
        """Apply accumulated gradients, then zero them.

        Raises:
            NonFiniteError: If any gradient is NaN or infinite; no parameter is touched.
        """
        for param in self.params:
            param.check_finite()
        for param in self.params:
            param.step_count += 1
            param.value, param.adam_m, param.adam_v = adam_update(
                param.value, param.grad, param.adam_m, param.adam_v, param.step_count, self.cfg
            )
            param.zero_grad()
