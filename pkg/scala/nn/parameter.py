from __future__ import annotations

import numpy as np

from ..errors import NonFiniteError, ShapeMismatchError

__all__ = ("Parameter", "xavier_init")


class Parameter:
    """A trainable float64 array with its gradient accumulator and Adam state.

    Args:
        name (str): Name used in error messages and checkpoints.
        value (np.ndarray): Initial value; copied.
    """

    def __init__(self, name: str, value: np.ndarray | float) -> None:
        self.name = name
        self.value = np.array(value, dtype=np.float64)
        self.grad = np.zeros_like(self.value)
        self.adam_m = np.zeros_like(self.value)
        self.adam_v = np.zeros_like(self.value)
        self.step_count = 0

    def __repr__(self) -> str:
        return f"Parameter(name={self.name!r}, shape={self.value.shape})"

    @property
    def shape(self) -> tuple[int, ...]:
        return self.value.shape

    def accumulate(self, grad: np.ndarray | float) -> None:
        grad = np.asarray(grad, dtype=np.float64)
        if grad.shape != self.value.shape:
            raise ShapeMismatchError(f"gradient of {self.name}", self.value.shape, grad.shape)
        self.grad += grad

    def zero_grad(self) -> None:
        self.grad.fill(0.0)

    def check_finite(self) -> None:
        if not np.isfinite(self.grad).all():
            raise NonFiniteError(self.name, "gradient")
        if not np.isfinite(self.value).all():
            raise NonFiniteError(self.name, "value")


def xavier_init(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Glorot-uniform matrix with entries in +-sqrt(6 / (rows + cols))."""
    if rows < 1 or cols < 1:
        msg = f"xavier_init needs positive dimensions, got {rows}x{cols}"
        raise ValueError(msg)
    bound = np.sqrt(6.0 / (rows + cols))
    return rng.uniform(-bound, bound, size=(rows, cols))
