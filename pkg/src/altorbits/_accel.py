"""Backend selection for the hot kernels.

Numba is used when it imports cleanly, unless ``ALTORBITS_PURE_NUMPY`` is set
to a truthy value, in which case every kernel runs on its numpy path.
"""
import os

_FLAG = os.environ.get("ALTORBITS_PURE_NUMPY", "").strip().lower()
PURE_NUMPY_REQUESTED = _FLAG in ("1", "true", "yes", "on")

HAVE_NUMBA = False
if not PURE_NUMPY_REQUESTED:
    try:
        from numba import njit  # noqa: F401

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
