"""Selects the point-counting kernel at import time.

The compiled extension is used when it was built; otherwise the pure
Python implementation.  Setting ``MOTZETA_PURE_PYTHON=1`` forces the
fallback.
"""
import os

from . import _kernels_py

count_points_py = _kernels_py.count_points
chart_offsets = _kernels_py.chart_offsets

try:
    from ._kernels import count_points as count_points_native
except ImportError:  # extension not built
    count_points_native = None

if count_points_native is not None and not os.environ.get("MOTZETA_PURE_PYTHON"):
    count_points = count_points_native
    BACKEND = "cython"
else:
    count_points = count_points_py
    BACKEND = "python"
