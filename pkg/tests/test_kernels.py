"""The compiled and pure-Python kernels must agree bit for bit."""

import importlib.util
import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skewmdp import HAVE_COMPILED
from skewmdp._backend import make_kernel
from skewmdp._pykernels import FieldKernel as PyKernel
from skewmdp.gf_tower import make_extension

FIELDS = [(3, 2), (5, 2), (5, 4), (7, 6), (11, 6), (13, 1)]

needs_c = pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")


@pytest.fixture(scope="module", params=FIELDS, ids=lambda p: f"F{p[0]}^{p[1]}")
def kernels(request):
    q, t = request.param
    F = make_extension(q, t, backend="python")
    py = F.kernel
    c = make_kernel(q, t, F.modulus, "cython") if HAVE_COMPILED else py
    return py, c


@needs_c
@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_scalar_ops_agree(kernels, data):
    py, c = kernels
    a = data.draw(st.integers(0, py.order - 1))
    b = data.draw(st.integers(0, py.order - 1))
    assert py.add(a, b) == c.add(a, b)
    assert py.sub(a, b) == c.sub(a, b)
    assert py.mul(a, b) == c.mul(a, b)
    assert py.neg(a) == c.neg(a)
    if a:
        assert py.inv(a) == c.inv(a)


@needs_c
def test_linear_algebra_agrees(kernels):
    py, c = kernels
    rng = np.random.default_rng(7)
    for _ in range(30):
        m = rng.integers(0, py.order, size=(4, 6))
        m[3] = m[1]
        assert py.rank(m) == c.rank(m)
        assert py.det(m[:, :4]) == c.det(m[:, :4])
        r1, p1 = py.rref(m)
        r2, p2 = c.rref(m)
        assert p1 == p2
        np.testing.assert_array_equal(r1, r2)
        u = rng.integers(0, py.order, size=4)
        np.testing.assert_array_equal(py.vecmat(u, m), c.vecmat(u, m))


@needs_c
@pytest.mark.parametrize("shape,k_first", [((2, 3), 1), ((3, 4), 2), ((2, 6), 2)])
def test_min_weight_agrees(shape, k_first):
    F = make_extension(3, 2, backend="python")
    c = make_kernel(3, 2, F.modulus, "cython")
    rng = np.random.default_rng(3)
    for _ in range(10):
        m = rng.integers(0, 9, size=shape)
        assert F.kernel.min_weight(m, k_first) == c.min_weight(m, k_first)


def test_min_weight_brute_force():
    F = make_extension(3, 2, backend="python")
    k = F.kernel
    m = np.array([[1, 3, 4, 0], [0, 1, 5, 7]])
    best = 99
    for u0 in range(1, 9):
        for u1 in range(9):
            v = k.vecmat([u0, u1], m)
            best = min(best, int(np.count_nonzero(v)))
    assert k.min_weight(m, 1)[0] == best


def test_det_sign_and_singular():
    F = make_extension(5, 2, backend="python")
    k = F.kernel
    # permutation matrix with one swap has det -1 = 4 in F_5
    assert k.det([[0, 1], [1, 0]]) == 4
    assert k.det([[2, 3], [1, 1]]) == 4  # 2 - 3 = -1
    assert k.det([[1, 2], [2, 4]]) == 0
    assert k.det(np.zeros((0, 0), dtype=np.int64)) == 1


def test_inverse_of_zero_raises(backend):
    F = make_extension(3, 2, backend=backend)
    with pytest.raises(ZeroDivisionError):
        F.kernel.inv(0)


def test_bad_modulus_rejected():
    with pytest.raises(ValueError):
        PyKernel(3, 2, [1, 0, 2])


@pytest.mark.parametrize("q,t", [(3, 1), (3, 2), (5, 3), (7, 3), (3, 7)])
def test_inverse_exhaustive(q, t, backend):
    F = make_extension(q, t, backend=backend)
    k = F.kernel
    for a in range(1, F.order):
        assert k.mul(a, k.inv(a)) == 1


@needs_c
def test_benchmark_script_runs(capsys):
    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    assert mod.main(["--repeat", "1", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 4 and all(r["cython_s"] > 0 for r in rows)
