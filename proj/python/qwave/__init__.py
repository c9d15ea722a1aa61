from ._qwave import *  # noqa: F401,F403
from ._qwave import __doc__  # noqa: F401
