import importlib
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from btl import _pykernels, kernels

try:
    compiled = importlib.import_module("btl._kernels")
except ImportError:
    compiled = None

needs_ext = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


@st.composite
def tables(draw, max_n=7, lo=-3, hi=3):
    n = draw(st.integers(0, max_n))
    vals = draw(st.lists(st.integers(lo, hi), min_size=1 << n, max_size=1 << n))
    return n, np.array(vals, dtype=np.int64)


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")
    assert "python" in kernels.backends()
    for name in kernels.NAMES:
        assert callable(getattr(kernels, name))


def test_pure_python_switch():
    code = "import btl.kernels as k; print(k.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env={"BTL_PURE_PYTHON": "1", "PATH": ""}, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
@given(tables())
def test_wht_agrees(args):
    n, v = args
    a, b = v.copy(), v.copy()
    _pykernels.wht_inplace(a)
    compiled.wht_inplace(b)
    assert np.array_equal(a, b)


def test_wht_twice_scales():
    v = np.arange(16, dtype=np.int64) - 5
    w = v.copy()
    kernels.wht_inplace(w)
    kernels.wht_inplace(w)
    assert np.array_equal(w, 16 * v)


@needs_ext
@given(tables(), st.data())
def test_scans_agree(args, data):
    n, v = args
    ell_bits = data.draw(st.integers(0, n))
    assert tuple(map(int, _pykernels.first_violation(v, n))) == tuple(map(int, compiled.first_violation(v, n)))
    for x, y in zip(_pykernels.violation_counts(v, n, ell_bits), compiled.violation_counts(v, n, ell_bits)):
        assert np.array_equal(x, y)
    assert np.array_equal(_pykernels.upper_envelope(v, n), compiled.upper_envelope(v, n))
    assert np.array_equal(_pykernels.lower_envelope(v, n), compiled.lower_envelope(v, n))
    assert int(_pykernels.count_violated_pairs(v, n)) == int(compiled.count_violated_pairs(v, n))


@needs_ext
@given(tables(lo=0, hi=1))
def test_violated_pairs_agree(args):
    n, v = args
    a = _pykernels.violated_pairs(v, n, 1, 0)
    b = compiled.violated_pairs(v, n, 1, 0)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


@given(tables(max_n=5, lo=0, hi=1))
def test_violated_pairs_brute(args):
    n, v = args
    indptr, indices = kernels.violated_pairs(v, n, 1, 0)
    got = {(x, int(y)) for x in range(1 << n) for y in indices[indptr[x]:indptr[x + 1]]}
    want = {(x, y) for x in range(1 << n) for y in range(1 << n)
            if x & y == x and v[x] == 1 and v[y] == 0}
    assert got == want
    assert int(kernels.count_violated_pairs(v, n)) == len(want)


@needs_ext
@given(st.integers(0, 3).flatmap(lambda lb: st.tuples(
    st.just(lb), st.integers(0, 5).flatmap(lambda m: st.tuples(
        st.just(m),
        st.lists(st.integers(0, (1 << m) - 1), min_size=1 << lb, max_size=1 << lb),
        st.lists(st.integers(0, (1 << m) - 1), min_size=1 << lb, max_size=1 << lb))))))
def test_gadget_kernels_agree(args):
    lb, (m, xs, ys) = args
    xs = np.array(xs, dtype=np.int64)
    ys = np.array(ys, dtype=np.int64)
    assert np.array_equal(_pykernels.mono_gadget_values(xs, ys, lb, m), compiled.mono_gadget_values(xs, ys, lb, m))
    sets = xs << lb
    assert np.array_equal(_pykernels.selector_values(sets, lb + m, lb), compiled.selector_values(sets, lb + m, lb))
