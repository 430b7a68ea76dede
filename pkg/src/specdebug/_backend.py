"""Select the kernel implementation at import time.

The compiled extension is used when it imports; setting the environment
variable ``SPECDEBUG_PURE_PYTHON=1`` forces the pure-Python kernels.
"""
import os

from . import _kernels_py

kernels = _kernels_py
if os.environ.get("SPECDEBUG_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.BACKEND
