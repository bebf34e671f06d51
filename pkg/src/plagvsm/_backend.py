"""Pick the compiled kernels when available, else the pure-Python fallback.

Set ``PLAGVSM_BACKEND=python`` to force the fallback.
"""

import os

from . import _fallback

BACKEND = "python"
kernels = _fallback

if os.environ.get("PLAGVSM_BACKEND", "").lower() not in ("python", "py", "fallback"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        kernels = _compiled
        BACKEND = "cython"


def available_backends():
    """Mapping of backend name -> kernel module for every backend importable here."""
    found = {"python": _fallback}
    try:
        from . import _kernels as _compiled
    except ImportError:
        return found
    found["cython"] = _compiled
    return found
