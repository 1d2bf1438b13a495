"""Kernel backend selection.

The hot inner loops (exact-cover verification, plane-line restriction, the
subset brute force, Hilbert-cube search) live twice: a compiled Cython core
and a pure-Python fallback with identical contracts.  The compiled core is
picked when importable; set EXLAB_PURE=1 to force the fallback (used by the
benchmark and by tests that cross-check the two).
"""

import os

if os.environ.get("EXLAB_PURE"):
    from . import _pure as _impl
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _pure as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND
cover_check = _impl.cover_check
restrict_lines = _impl.restrict_lines
max_star_forest_kernel = _impl.max_star_forest_kernel
cube_search = _impl.cube_search


def backend_name() -> str:
    return BACKEND
