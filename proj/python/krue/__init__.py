"""Unclonable encryption with key recycling: Python surface of the C++ core."""

try:
    # Installed layout: the extension lives inside the package.
    from ._core import *  # noqa: F401,F403
except ImportError:
    # Build-tree layout: the extension sits next to the package on sys.path.
    from _core import *  # noqa: F401,F403
