"""Backend selection for the hot batch kernels.

Two implementations of the same kernel signatures exist:

* ``numba``  — scalar loops from :mod:`cycle4._scalar` compiled with
  ``@njit(cache=True, nogil=True)`` (the default when numba imports);
* ``numpy``  — pure-numpy vectorized fallbacks, no compilation step.

The environment variable ``CYCLE4_BACKEND`` picks one explicitly
(``numba`` or ``numpy``); it is read once at import.  Requesting numba
without numba installed raises immediately rather than degrading
silently.  ``benchmarks/bench_backends.py`` times the two side by side.
"""

from __future__ import annotations

import os

_ENV_VAR = "CYCLE4_BACKEND"
_VALID = ("numba", "numpy")


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def resolve_backend(requested: str | None = None) -> str:
    """Resolve a backend name from an explicit request or the environment."""
    name = requested if requested is not None else os.environ.get(_ENV_VAR, "").strip().lower()
    if name == "":
        return "numba" if _numba_available() else "numpy"
    if name not in _VALID:
        raise ValueError(f"{_ENV_VAR} must be one of {_VALID}, got {name!r}")
    if name == "numba" and not _numba_available():
        raise ImportError(f"{_ENV_VAR}={name} requested but numba is not importable")
    return name


BACKEND = resolve_backend()

_kernels = None


def kernels():
    """The active kernel module (lazy, so importing cycle4 stays cheap)."""
    global _kernels
    if _kernels is None:
        if BACKEND == "numba":
            from . import _batch_numba as mod
        else:
            from . import _batch_numpy as mod
        _kernels = mod
    return _kernels
