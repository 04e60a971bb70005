"""Kernel backend selection.

The compiled extension is preferred when present; the NumPy fallback is used
otherwise, or when PAULICUT_PURE_PYTHON=1 is set. Both expose the same
module-level API (see _kernels_py) and agree to floating-point tolerance.
"""

from __future__ import annotations

import os

if os.environ.get("PAULICUT_PURE_PYTHON"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels


def backend_name() -> str:
    return kernels.BACKEND
