"""Python interface to the iterative learning control library."""

from ._ilc import *  # noqa: F401,F403
from ._ilc import __doc__  # noqa: F401
