"""Kernel backend selection.

The compiled extension ``batchgreedy._kernels`` is preferred; the pure-Python
mirror ``batchgreedy._pykernels`` is the fallback.  Both expose the same
functions and produce bit-identical floats.  Set ``BATCHGREEDY_BACKEND`` to
``python`` or ``cython`` to force one (forcing ``cython`` raises if the
extension is missing).
"""

from __future__ import annotations

import os

from . import _pykernels

_requested = os.environ.get("BATCHGREEDY_BACKEND", "auto").strip().lower()

if _requested in ("python", "pure"):
    kernels = _pykernels
elif _requested in ("cython", "c", "compiled"):
    from . import _kernels as kernels  # type: ignore[no-redef]
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _pykernels

BACKEND_NAME: str = kernels.NAME


def get_kernels(name: str):
    """Return a specific backend module (for benchmarks and parity tests)."""
    if name in ("python", "pure"):
        return _pykernels
    if name in ("cython", "c", "compiled"):
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")


def available_backends() -> tuple[str, ...]:
    try:
        from . import _kernels  # noqa: F401
    except ImportError:
        return ("python",)
    return ("python", "cython")
