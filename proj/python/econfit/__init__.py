"""Country Fitness and product Complexity rankings, ECI, and analogue growth forecasts."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, EconfitError  # noqa: F401
