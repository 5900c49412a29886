"""Backend selection: compiled extension when built, numpy fallback otherwise.

Set PWHANKEL_PURE=1 to force the numpy implementation even when the
extension is available (used by the benchmark and the equivalence tests).
"""

import os

from . import _kernels_py

if os.environ.get("PWHANKEL_PURE", "") == "1":
    core = _kernels_py
else:
    try:
        from . import _fastcore as core
    except ImportError:
        core = _kernels_py

BACKEND_NAME = core.BACKEND_NAME


def backend_name():
    """Name of the kernel backend in use: 'compiled' or 'python'."""
    return BACKEND_NAME
