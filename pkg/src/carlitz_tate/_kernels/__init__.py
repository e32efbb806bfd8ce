"""Backend selection for the series kernels.

The compiled extension is used when importable.  Set
``CARLITZ_TATE_BACKEND=python`` to force the fallback, or ``=c`` to make a
missing extension an import-time error.
"""
from __future__ import annotations

import os

from ._pykernel import PyKernel

try:
    from ._ckernel import CKernel
except ImportError:  # extension not built
    CKernel = None

__all__ = ["make_kernel", "available_backends", "default_backend", "PyKernel", "CKernel"]


def available_backends() -> list[str]:
    return (["c"] if CKernel is not None else []) + ["python"]


def default_backend() -> str:
    want = os.environ.get("CARLITZ_TATE_BACKEND", "auto").lower()
    if want == "python":
        return "python"
    if want == "c":
        if CKernel is None:
            raise ImportError("CARLITZ_TATE_BACKEND=c but the compiled kernel is not built")
        return "c"
    return "c" if CKernel is not None else "python"


def make_kernel(p, Q, add_tab, mul_tab, neg_tab, inv_tab, backend: str | None = None):
    backend = backend or default_backend()
    cls = CKernel if backend == "c" else PyKernel
    if cls is None:
        raise ImportError("compiled kernel not available")
    return cls(p, Q, add_tab, mul_tab, neg_tab, inv_tab)
