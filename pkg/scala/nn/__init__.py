from __future__ import annotations

from .checkpoint import *
from .functional import *
from .gradcheck import *
from .optim import *
from .parameter import *
