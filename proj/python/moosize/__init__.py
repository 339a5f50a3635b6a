"""Multi-objective drive-strength remapping for gate-level circuits.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from moosize._core import *  # noqa: F401,F403
from moosize._core import __doc__, __version__  # noqa: F401
