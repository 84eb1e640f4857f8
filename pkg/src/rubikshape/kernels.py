"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the NumPy
fallback.  Setting ``RUBIKSHAPE_PURE=1`` forces the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
expand = _pykernels.expand
merge = _pykernels.merge

if not os.environ.get("RUBIKSHAPE_PURE"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "compiled"
        expand = _ckernels.expand
        merge = _ckernels.merge

BACKENDS = {"python": _pykernels}
if BACKEND == "compiled":
    BACKENDS["compiled"] = _ckernels


def get_backend(name=None):
    """Module providing ``expand`` and ``merge`` for ``name`` (default: active)."""
    if name is None:
        name = BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available") from None
