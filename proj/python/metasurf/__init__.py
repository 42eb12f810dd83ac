"""Effective impedance of a periodic plasmonic nanoparticle monolayer.

Thin wrapper over the C++ core; see the package README for the model and the
CLI front end.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
