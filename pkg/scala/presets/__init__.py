from __future__ import annotations

from .manager import *
