from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np
import orjson
from loguru import logger

from ..constants.nn import CHECKPOINT_VERSION
from ..errors import CheckpointError
from .parameter import Parameter

__all__ = ("load_checkpoint", "save_checkpoint")


def _dump_param(param: Parameter) -> dict[str, Any]:
    return {
        "shape": list(param.value.shape),
        "value": param.value.ravel().tolist(),
        "adam_m": param.adam_m.ravel().tolist(),
        "adam_v": param.adam_v.ravel().tolist(),
        "step_count": param.step_count,
    }


def _load_param(name: str, data: dict[str, Any], path: Path) -> Parameter:
    try:
        shape = tuple(data["shape"])
        param = Parameter(name, np.asarray(data["value"], dtype=np.float64).reshape(shape))
        param.adam_m = np.asarray(data["adam_m"], dtype=np.float64).reshape(shape)
        param.adam_v = np.asarray(data["adam_v"], dtype=np.float64).reshape(shape)
        param.step_count = int(data["step_count"])
    except (KeyError, TypeError, ValueError) as e:
        raise CheckpointError(str(path), f"parameter {name!r} is malformed ({e})") from e
    return param


def save_checkpoint(
    params: Sequence[Parameter], path: Path | str, *, meta: dict[str, Any] | None = None
) -> None:
    """Write parameters and optimizer state as JSON.

    Floats are written with shortest round-trip precision, so a reload is bit-exact.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    blob = {
        "version": CHECKPOINT_VERSION,
        "meta": meta or {},
        "params": {param.name: _dump_param(param) for param in params},
    }
    path.write_bytes(orjson.dumps(blob))
    logger.debug(f"Saved {len(params)} parameters to {path}")


def load_checkpoint(path: Path | str) -> tuple[dict[str, Parameter], dict[str, Any]]:
    """Read a checkpoint written by :func:`save_checkpoint`.

    Returns:
        tuple: Parameters by name and the stored metadata.

    Raises:
        CheckpointError: If the file is missing, unreadable or of another version.
    """
    path = Path(path)
    try:
        blob = orjson.loads(path.read_bytes())
    except FileNotFoundError as e:
        raise CheckpointError(str(path), "file not found") from e
    except orjson.JSONDecodeError as e:
        raise CheckpointError(str(path), f"invalid JSON ({e})") from e

    if not isinstance(blob, dict) or blob.get("version") != CHECKPOINT_VERSION:
        version = blob.get("version") if isinstance(blob, dict) else None
        raise CheckpointError(str(path), f"unsupported version {version!r}, expected {CHECKPOINT_VERSION}")

    params = {name: _load_param(name, data, path) for name, data in blob.get("params", {}).items()}
    return params, blob.get("meta", {})
