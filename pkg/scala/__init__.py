from __future__ import annotations

from . import errors as errors
from . import graph as graph
from . import nn as nn
from . import utils as utils
from .enums import *
from .evaluation import auc as auc
from .evaluation import build_report as build_report
from .evaluation import roc_points as roc_points
from .model import ModelParams as ModelParams
from .models import *
from .pipeline import *
from .presets import load_preset as load_preset
from .sampler import *
from .sparsify import *
