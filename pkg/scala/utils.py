from __future__ import annotations

import hashlib
from typing import Any

import numpy as np
import orjson

__all__ = ("config_hash", "lane_rng", "minmax_normalize", "minmax_rows")


def lane_rng(seed: int, *keys: int) -> np.random.Generator:
    """Derive an independent random stream for one parallel lane.

    Args:
        seed: The run's base seed.
        *keys: Integers identifying the lane (stream tag, round, batch, ...).

    Returns:
        np.random.Generator: A generator whose draws depend only on ``seed`` and ``keys``.
    """
    # the key count is mixed in since SeedSequence zero-pads its entropy
    return np.random.default_rng(np.random.SeedSequence([seed, len(keys), *keys]))


def minmax_normalize(values: np.ndarray, *, degenerate: float) -> np.ndarray:
    """Min-max normalize a vector into [0, 1].

    Args:
        values: The values to normalize.
        degenerate: The value every entry takes when max equals min.

    Returns:
        np.ndarray: The normalized values, same shape as ``values``.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return values.copy()
    lo = values.min()
    hi = values.max()
    if hi == lo:
        return np.full_like(values, degenerate)
    return (values - lo) / (hi - lo)


def minmax_rows(values: np.ndarray, *, degenerate: float) -> np.ndarray:
    """Min-max normalize each row of a 2-D array independently."""
    values = np.asarray(values, dtype=np.float64)
    lo = values.min(axis=1, keepdims=True)
    hi = values.max(axis=1, keepdims=True)
    span = hi - lo
    flat = span == 0
    out = (values - lo) / np.where(flat, 1.0, span)
    return np.where(flat, degenerate, out)


def config_hash(config: dict[str, Any]) -> str:
    """Stable short hash of a JSON-serializable config."""
    blob = orjson.dumps(config, option=orjson.OPT_SORT_KEYS)
    return hashlib.sha256(blob).hexdigest()[:16]
