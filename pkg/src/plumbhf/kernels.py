"""Kernel selection for the lattice enumeration oracle.

Two interchangeable kernels exist: the compiled Cython extension and the
numpy/pure-Python reference in :mod:`plumbhf._kernel_py`.  They implement the
same contract and must return bit-identical output.  The compiled one is
preferred when importable; set ``PLUMBHF_FORCE_PY_KERNEL=1`` to force the
reference kernel (useful for benchmarking and for debugging the extension).
"""

from __future__ import annotations

import os
from typing import Callable, Optional

from . import _kernel_py

__all__ = ["available_kernels", "get_kernel", "kernel_name", "python_kernel", "compiled_kernel"]

python_kernel = _kernel_py.run

try:
    from . import _chi_kernel as _ext

    compiled_kernel: Optional[Callable] = _ext.run
except ImportError:
    compiled_kernel = None

_NAMES = {python_kernel: "python"}
if compiled_kernel is not None:
    _NAMES[compiled_kernel] = "compiled"


def available_kernels() -> dict[str, Callable]:
    out = {"python": python_kernel}
    if compiled_kernel is not None:
        out["compiled"] = compiled_kernel
    return out


def get_kernel(name: Optional[str] = None) -> Callable:
    """Resolve a kernel by name, or pick the default.

    Default order: compiled when built, else python.  The environment switch
    PLUMBHF_FORCE_PY_KERNEL=1 overrides the default (not explicit names).
    """
    if name is not None:
        try:
            return available_kernels()[name]
        except KeyError:
            raise ValueError(f"unknown kernel {name!r}; have {sorted(available_kernels())}") from None
    if os.environ.get("PLUMBHF_FORCE_PY_KERNEL"):
        return python_kernel
    return compiled_kernel if compiled_kernel is not None else python_kernel


def kernel_name(kernel: Callable) -> str:
    return _NAMES.get(kernel, getattr(kernel, "__name__", "unknown"))
