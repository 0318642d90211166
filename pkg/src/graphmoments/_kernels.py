"""Kernel backend selection.

Imports the compiled Cython kernels when available, otherwise the pure-Python
reference implementation. `GRAPHMOMENTS_PURE=1` forces the fallback (useful
for benchmarking and for verifying that both backends agree).
"""

from __future__ import annotations

import os

from . import _core_py

if os.environ.get("GRAPHMOMENTS_PURE") == "1":
    kernels = _core_py
else:
    try:
        from . import _core as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _core_py


def backend() -> str:
    """Name of the active kernel backend ("cython" or "python")."""
    return kernels.IMPL


def pure_kernels():
    """Always the pure-Python backend (for cross-checking)."""
    return _core_py
