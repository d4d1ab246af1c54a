"""Kernel selection: the compiled extension when importable, else pure Python.

Set FERMIALG_PURE_KERNELS=1 to force the fallback (used by the benchmark
and by tests that pin down agreement between the two implementations).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("FERMIALG_PURE_KERNELS"):
    _impl = _kernels_py
    COMPILED = False
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        _impl = _kernels_py
        COMPILED = False

wedge_dense = _impl.wedge_dense
clifford_dense = _impl.clifford_dense
mul_parity = _kernels_py.mul_parity


def kernel_backend() -> str:
    return "compiled" if COMPILED else "python"
