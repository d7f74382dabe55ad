"""Kernel dispatch: the compiled extension when it was built, else pure Python.

Set HSM_PURE_PYTHON=1 to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

_compiled = None
if not os.environ.get("HSM_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def _dispatch(name, *args):
    if _compiled is not None:
        try:
            return getattr(_compiled, name)(*args)
        except OverflowError:
            # values beyond 64 bits: redo with Python integers
            pass
    return getattr(_kernels_py, name)(*args)


def chart_count(cycle, T: int) -> int:
    return int(_dispatch("chart_count", list(cycle), T))


def chart_points(cycle, T: int) -> list[tuple[int, int, int, int, int]]:
    return _dispatch("chart_points", list(cycle), T)


def min_trace(cycle, t_m1: int, t_0: int) -> tuple[int, int]:
    return _dispatch("min_trace", list(cycle), t_m1, t_0)
