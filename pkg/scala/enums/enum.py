from __future__ import annotations

import sys
from enum import IntEnum

if sys.version_info < (3, 11):
    from enum import Enum as StrEnum
else:
    from enum import StrEnum

__all__ = ("AnomalyKind", "Polarity", "SparTarget", "Variant", "View")


class AnomalyKind(IntEnum):
    """Per-node ground-truth flag, written as-is to labels files."""

    NORMAL = 0
    STRUCTURAL = 1
    ATTRIBUTE = 2


class View(StrEnum):
    """Graph view a subgraph was sampled from."""

    DENSE = "dense"
    SPAR = "spar"


class Polarity(StrEnum):
    """Whether a subgraph belongs to its own target or to a contrasting one."""

    POSITIVE = "positive"
    NEGATIVE = "negative"


class SparTarget(StrEnum):
    """Target embedding the spar-view discriminator compares against.

    HAT uses the spar-view MLP output, DENSE reuses the dense-view one.
    """

    HAT = "hat"
    DENSE = "dense"


class Variant(StrEnum):
    """Ablation variants."""

    FULL = "full"
    WITHOUT_SPAR = "without-spar"
    WITHOUT_CON = "without-con"
    WITHOUT_SPAR_VIEW = "without-spar-view"
    WITHOUT_WEIGHT = "without-weight"
