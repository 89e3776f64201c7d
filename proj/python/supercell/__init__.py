"""Multi-tier LiFi attocell super cells with multi-hop optical wireless backhaul.

Thin re-export of the compiled extension.
"""

from ._supercell import *  # noqa: F401,F403
from ._supercell import __version__  # noqa: F401
