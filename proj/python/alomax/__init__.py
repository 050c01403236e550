"""alpha-Lomax compound fading channel model.

Distribution primitives, closed-form performance metrics, samplers,
Monte-Carlo estimation, and empirical-data fitting, backed by the C++
core.
"""

from ._alomax import *  # noqa: F401,F403
from ._alomax import __doc__  # noqa: F401
