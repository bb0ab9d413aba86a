from __future__ import annotations

from typing import Final

__all__ = (
    "ADAM_BETA1",
    "ADAM_BETA2",
    "ADAM_EPS",
    "CHECKPOINT_VERSION",
    "GRAD_CHECK_FLOOR",
    "GRAD_CHECK_STEP",
    "PRELU_INIT",
    "PROB_CLAMP",
)

PROB_CLAMP: Final[float] = 1e-7
PRELU_INIT: Final[float] = 0.25

ADAM_BETA1: Final[float] = 0.9
ADAM_BETA2: Final[float] = 0.999
ADAM_EPS: Final[float] = 1e-8

GRAD_CHECK_STEP: Final[float] = 1e-4
# |analytic - numeric| / max(|analytic| + |numeric|, floor)
GRAD_CHECK_FLOOR: Final[float] = 1e-5

CHECKPOINT_VERSION: Final[int] = 1
