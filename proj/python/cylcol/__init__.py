"""3-coloring extension on cylinder graphs: generators, solver, reductions and verification suites."""

import os as _os

# a wheel carries its own copy of the catalog next to this file
_bundled = _os.path.join(_os.path.dirname(__file__), "data")
if "CYLCOL_DATA" not in _os.environ and _os.path.isdir(_os.path.join(_bundled, "catalog")):
    _os.environ["CYLCOL_DATA"] = _bundled

from ._cylcol import *  # noqa: E402,F401,F403
from ._cylcol import GraphError, ColoringError, ParseError  # noqa: E402,F401

__version__ = "0.1.0"
