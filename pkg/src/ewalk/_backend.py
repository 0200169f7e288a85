"""Kernel backend selection.

The hot loops (cocycle products, time stepping) exist twice: numba-compiled
and pure numpy.  ``EWALK_BACKEND`` picks one:

* ``numba`` -- require numba, raise if it cannot be imported;
* ``numpy`` -- force the pure-numpy fallback;
* unset/``auto`` -- numba if importable, numpy otherwise.

Both backends produce results that agree to rounding; see
``benchmarks/bench_kernels.py`` for a speed comparison.
"""

from __future__ import annotations

import os

from . import _kernels_numpy

_BACKEND_ENV = "EWALK_BACKEND"
_active = None
_active_name = ""


def _load():
    global _active, _active_name
    if _active is not None:
        return
    choice = os.environ.get(_BACKEND_ENV, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"{_BACKEND_ENV} must be 'numba', 'numpy' or 'auto', got {choice!r}")
    if choice == "numpy":
        _active, _active_name = _kernels_numpy, "numpy"
        return
    try:
        from . import _kernels_numba
        _active, _active_name = _kernels_numba, "numba"
    except ImportError:
        if choice == "numba":
            raise
        _active, _active_name = _kernels_numpy, "numpy"


def get_backend():
    """Return the active kernel module (numba twin or numpy fallback)."""
    _load()
    return _active


def backend_name() -> str:
    _load()
    return _active_name
