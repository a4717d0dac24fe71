"""Percolation laboratory for the d-dimensional hypercube.

Thin package shim over the compiled module: installed wheels carry
``qperc._qperc`` next to this file, while in-tree test runs put the compiled
module directly on ``sys.path``.
"""

try:
    from ._qperc import *  # noqa: F401,F403
    from ._qperc import __version__  # noqa: F401
except ImportError:  # pragma: no cover - build-tree layout
    from _qperc import *  # noqa: F401,F403
    from _qperc import __version__  # noqa: F401
