"""Kernel selection: the compiled core when importable, pure Python otherwise.

Set ``SKEWMDP_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

FORCE_PURE = os.environ.get("SKEWMDP_PURE_PYTHON", "") not in ("", "0")

HAVE_COMPILED = _ckernels is not None


def make_kernel(q: int, t: int, modulus, backend: str | None = None):
    """Return a field kernel for F_{q^t}.

    ``backend`` is ``"cython"``, ``"python"`` or None (best available).
    Fields too large for 64-bit encodings always use the Python kernel.
    """
    if backend is None:
        backend = "python" if FORCE_PURE or not HAVE_COMPILED else "cython"
    if backend == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernel not available")
        try:
            return _ckernels.FieldKernel(q, t, modulus)
        except OverflowError:
            return _pykernels.FieldKernel(q, t, modulus)
    if backend == "python":
        return _pykernels.FieldKernel(q, t, modulus)
    raise ValueError(f"unknown backend {backend!r}")


def default_backend() -> str:
    return "python" if FORCE_PURE or not HAVE_COMPILED else "cython"
