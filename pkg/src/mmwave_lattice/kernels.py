"""Kernel backend selection.

Default is the numba JIT backend; set MMWAVE_NO_NUMBA=1 (or any of 1/true/yes)
to force the pure numpy/Python fallback, which is also used automatically if
numba is unavailable.  The flag is read at import time.  Both backends are
bit-identical (asserted by the test suite); only speed differs.
"""

import os

_flag = os.environ.get("MMWAVE_NO_NUMBA", "").strip().lower()
_want_numba = _flag not in ("1", "true", "yes")

if _want_numba:
    try:
        from .kernels_numba import eval_hetnet, eval_single
        BACKEND = "numba"
    except ImportError:  # numba missing/broken: degrade silently but visibly
        from .kernels_numpy import eval_hetnet, eval_single
        BACKEND = "numpy"
else:
    from .kernels_numpy import eval_hetnet, eval_single
    BACKEND = "numpy"


def get_backend() -> str:
    return BACKEND


__all__ = ["eval_single", "eval_hetnet", "get_backend", "BACKEND"]
