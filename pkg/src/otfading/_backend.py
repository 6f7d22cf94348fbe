"""Kernel backend selection: compiled extension when available, numpy otherwise.

Set OTFADING_BACKEND=python or =compiled to force a choice (the latter
raises if the extension is missing).
"""

import os

from . import _kernels_py

_forced = os.environ.get("OTFADING_BACKEND")

if _forced == "python":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _forced == "compiled":
            raise
        _impl = _kernels_py
        BACKEND = "python"

jacobi_sweeps = _impl.jacobi_sweeps
pair_powers = _impl.pair_powers
waterfill = _impl.waterfill
ETA_LO = _kernels_py.ETA_LO
ETA_HI = _kernels_py.ETA_HI
