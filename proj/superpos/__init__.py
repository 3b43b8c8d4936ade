from ._superpos import *  # noqa: F401,F403
from ._superpos import __doc__  # noqa: F401
