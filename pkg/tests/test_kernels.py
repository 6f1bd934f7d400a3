import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from motzeta import geometry, kernels
from motzeta.galois import field

native = pytest.mark.skipif(kernels.count_points_native is None, reason="compiled kernel not built")


def test_chart_offsets():
    # charts of P^2 over F_3: 9 + 3 + 1 points
    assert list(kernels.chart_offsets(3, 2)) == [0, 9, 12, 13]


def test_environment_forces_python_backend():
    env = dict(os.environ, MOTZETA_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import motzeta; print(motzeta.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"


@native
def test_default_backend_is_compiled():
    if os.environ.get("MOTZETA_PURE_PYTHON"):
        pytest.skip("fallback forced by environment")
    assert kernels.BACKEND == "cython"


@st.composite
def varieties(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    m = draw(st.integers(1, 3))
    eqs = []
    for _ in range(draw(st.integers(0, 2))):
        deg = draw(st.integers(1, 3))
        terms = []
        for _ in range(draw(st.integers(1, 3))):
            cuts = sorted(draw(st.lists(st.integers(0, deg), min_size=m, max_size=m)))
            exps = [b - a for a, b in zip([0] + cuts, cuts + [deg])]
            terms.append((draw(st.integers(-4, 4)), tuple(exps)))
        eqs.append(tuple(terms))
    return geometry.ProjectiveVarietySpec(m, p, tuple(eqs))


@native
@settings(max_examples=40)
@given(varieties(), st.integers(1, 2))
def test_backends_agree_on_random_varieties(x, k):
    F = field(x.base_prime, k)
    assert geometry.enumerate_points(x, F, backend="python") == geometry.enumerate_points(x, F, backend="cython")


@native
def test_kernels_agree_on_partial_ranges():
    x = geometry.parse_variety("3 3\nx0*x1 - x2*x3")
    F = field(3, 2)
    args = geometry._kernel_inputs(x, F)
    total = int(kernels.chart_offsets(F.q, 3)[-1])
    for lo, hi in [(0, total), (5, 700), (total - 3, total), (10, 10)]:
        a = kernels.count_points_py(F.q, 3, *args, lo, hi)
        b = kernels.count_points_native(F.q, 3, *args, lo, hi)
        assert a == b


def test_kernel_input_arrays_are_int64():
    x = geometry.parse_variety("5 2\nx0^2 + 2*x1*x2")
    zech, coef_log, exps, eq_start = geometry._kernel_inputs(x, field(5))
    for arr in (zech, coef_log, exps, eq_start):
        assert isinstance(arr, np.ndarray) and arr.dtype == np.int64
