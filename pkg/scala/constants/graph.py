from __future__ import annotations

from typing import Final

__all__ = (
    "DEFAULT_CANDIDATE_POOL",
    "DEFAULT_CLIQUE_SIZE",
    "DEFAULT_RESTART_PROB",
    "HOMOPHILY_BIN_WIDTH",
    "INFER_STREAM",
    "INIT_STREAM",
    "INJECT_ATTRIBUTE_STREAM",
    "INJECT_STRUCTURAL_STREAM",
    "SYNTHETIC_STREAM",
    "TRAIN_STREAM",
)

DEFAULT_CLIQUE_SIZE: Final[int] = 15
DEFAULT_CANDIDATE_POOL: Final[int] = 50
DEFAULT_RESTART_PROB: Final[float] = 0.3

HOMOPHILY_BIN_WIDTH: Final[float] = 0.1

# RNG stream tags mixed into per-lane seeds
TRAIN_STREAM: Final[int] = 0
INFER_STREAM: Final[int] = 1
INJECT_STRUCTURAL_STREAM: Final[int] = 2
INJECT_ATTRIBUTE_STREAM: Final[int] = 3
INIT_STREAM: Final[int] = 4
SYNTHETIC_STREAM: Final[int] = 5
