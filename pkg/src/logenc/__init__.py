"""Logarithmic-qubit variational encoding for combinatorial optimization."""

from .encoder import *  # noqa: F401,F403
from .harness import *  # noqa: F401,F403
from .model import *  # noqa: F401,F403
from .optimizers import *  # noqa: F401,F403
from .oracles import *  # noqa: F401,F403
from .reductions import *  # noqa: F401,F403
from .simulator import *  # noqa: F401,F403
from .kernels import BACKEND

__version__ = "0.1.0"
