"""Kernel backend selection.

Prefers the compiled Cython core and falls back to the pure-Python
kernels when the extension is absent.  Set the environment variable
``HYPERCLEAN_PURE_PYTHON=1`` before import to force the fallback (the
benchmark and the cross-backend tests do this).
"""

import os

from . import _kernels_py

if os.environ.get("HYPERCLEAN_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

mc_random_deletion = _impl.mc_random_deletion
random_deletion_members = _impl.random_deletion_members
bnb_alpha = _impl.bnb_alpha
enum_alpha = _impl.enum_alpha
alpha_subset_table = _impl.alpha_subset_table


def backend_name() -> str:
    """Which kernel implementation is active: "cython" or "python"."""
    return BACKEND
