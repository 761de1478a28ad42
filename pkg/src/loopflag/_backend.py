"""Kernel backend selection.

The integer kernels in :mod:`loopflag.kernels` exist twice: a numba ``@njit``
version and a vectorised numpy version.  Which one the library dispatches to
is decided once, at import time:

* ``LOOPFLAG_KERNELS=numpy`` forces the numpy path;
* ``LOOPFLAG_KERNELS=numba`` requires numba (ImportError otherwise);
* unset or ``auto`` picks numba when it imports cleanly.
"""

import os

_requested = os.environ.get("LOOPFLAG_KERNELS", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ImportError(f"LOOPFLAG_KERNELS must be auto, numba or numpy, got {_requested!r}")

try:
    if _requested == "numpy":
        raise ImportError("numba disabled by LOOPFLAG_KERNELS")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    if _requested == "numba":
        raise
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        # Bare ``@njit`` and ``@njit(...)`` both become no-ops.
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda func: func


BACKEND = "numba" if HAS_NUMBA else "numpy"
