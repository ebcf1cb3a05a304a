"""Numba availability probe and the env switch for the pure-numpy path.

Set ``RISKROUTE_NO_NUMBA=1`` before import to force the numpy fallback
kernels even when numba is installed (useful for debugging and for the
benchmark baseline).
"""

import os

_FLAG = os.environ.get("RISKROUTE_NO_NUMBA", "").strip().lower()
NUMBA_REQUESTED = _FLAG in ("", "0", "false")

if NUMBA_REQUESTED:
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False

if not NUMBA_ENABLED:

    def njit(*args, **kwargs):  # noqa: ARG001 - mirrors numba's signature
        """Decorator stand-in when numba is disabled: returns f unchanged."""

        def wrap(f):
            return f

        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return wrap
