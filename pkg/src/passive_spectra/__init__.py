"""Spectral analysis and synthesis of strictly passive LTI systems.

Spectral zeros from the passivity Hamiltonian, extremal ARE solutions,
positive-real and quasi balancing, pole/zero/spectral-zero interlacing,
and Foster RC/RL synthesis.
"""

from .balancing import *  # noqa: F401,F403
from .exceptions import *  # noqa: F401,F403
from .interlace import *  # noqa: F401,F403
from .linops import *  # noqa: F401,F403
from .model import *  # noqa: F401,F403
from .oracle import *  # noqa: F401,F403
from .passivity import *  # noqa: F401,F403
from .synth import *  # noqa: F401,F403
from .generators import *  # noqa: F401,F403
from . import catalog, io  # noqa: F401

__version__ = "0.1.0"
