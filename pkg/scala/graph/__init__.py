from __future__ import annotations

from .homophily import *
from .inject import *
from .io import *
from .synthetic import *
