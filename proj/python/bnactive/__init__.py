"""Committee-based active learning for discrete Bayesian networks."""

from bnactive._core import *  # noqa: F401,F403
from bnactive._core import __doc__  # noqa: F401
