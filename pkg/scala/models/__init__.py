from __future__ import annotations

from .config import *
from .graph import *
from .preset import *
from .report import *
from .scores import *
from .sparsify import *
from .subgraph import *
