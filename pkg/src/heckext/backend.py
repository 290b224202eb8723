"""Kernel backend selection.

The compiled extension ``heckext._ckernels`` is used when it imports;
otherwise the numpy fallback in ``heckext._pykernels`` is used.  Setting
``HECKEXT_BACKEND=python`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

python = _pykernels

try:
    from . import _ckernels as compiled
except ImportError:  # extension not built
    compiled = None

AVAILABLE = ("cython", "python") if compiled is not None else ("python",)


def use(name: str) -> str:
    """Switch the active kernels; returns the previous backend name."""
    global active, NAME, rref_inplace, closure
    if name not in AVAILABLE:
        raise ValueError(f"backend {name!r} unavailable; have {', '.join(AVAILABLE)}")
    prev = globals().get("NAME")
    active = compiled if name == "cython" else _pykernels
    NAME = name
    rref_inplace = active.rref_inplace
    closure = active.closure
    return prev


use("cython" if compiled is not None and os.environ.get("HECKEXT_BACKEND", "").lower() != "python" else "python")
