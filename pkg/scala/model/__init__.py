from __future__ import annotations

from .layers import *
from .network import *
from .params import *
