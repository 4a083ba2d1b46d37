"""Kernel backend selection.

The environment flag ARITHDYN_BACKEND picks the implementation:
  auto   (default) numba when importable, else the numpy fallback
  numba  require the compiled kernels, error if numba is missing
  numpy  force the pure-numpy fallback
"""

from __future__ import annotations

import os

from ..errors import InputError

ENV_FLAG = "ARITHDYN_BACKEND"
_CHOICES = ("auto", "numba", "numpy")


def available_backends() -> list[str]:
    out = []
    try:
        from . import _kernels_numba  # noqa: F401
        out.append("numba")
    except ImportError:
        pass
    out.append("numpy")
    return out


def get_backend(name: str | None = None):
    """Resolve a backend name to its kernel module."""
    if name is None:
        name = os.environ.get(ENV_FLAG, "auto")
    if name not in _CHOICES:
        raise InputError(
            f"unknown backend {name!r}; choose one of {', '.join(_CHOICES)}")
    if name in ("auto", "numba"):
        try:
            from . import _kernels_numba
            return _kernels_numba
        except ImportError:
            if name == "numba":
                raise InputError(
                    "backend 'numba' requested but numba is not importable")
    from . import _kernels_numpy
    return _kernels_numpy
