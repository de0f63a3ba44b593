"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``CFFRAC_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("CFFRAC_PURE_PYTHON"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

adaptive_simpson = _impl.adaptive_simpson
exp_filter_left = _impl.exp_filter_left
exp_filter_right = _impl.exp_filter_right

__all__ = ["BACKEND", "adaptive_simpson", "exp_filter_left", "exp_filter_right"]
