"""Kernel backend selection.

The compiled Cython kernel is preferred; the pure-Python reference
kernel is the fallback. Both implement identical semantics (see
``_ref.py``). Set DYNLAB_FORCE_PYTHON_KERNEL=1 to force the fallback.
"""

from __future__ import annotations

import os

from . import _ref

if os.environ.get("DYNLAB_FORCE_PYTHON_KERNEL"):
    _impl = _ref
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _ref

BACKEND = _impl.BACKEND
classify_point = _impl.classify_point
classify_grid = _impl.classify_grid

reference = _ref


def backends():
    """Mapping of available backend name -> module."""
    found = {"python": _ref}
    try:
        from . import _core
        found["compiled"] = _core
    except ImportError:
        pass
    return found
