"""Compare the compiled and pure-Python field kernels.

Run from the repository root after building the extension::

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --repeat 5 --json

Each workload is timed on both backends with identical inputs and the
results are cross-checked, so a speedup is only reported for matching output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

import numpy as np

from skewmdp import HAVE_COMPILED
from skewmdp.conv_core import PolyMatrix, column_distance_exact, mdp_minor_check, truncate
from skewmdp.construction import construct_code
from skewmdp.gf_tower import make_extension


def _best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _scalar_mul(q, t, count):
    def build(backend):
        k = make_extension(q, t, backend=backend).kernel
        rng = random.Random(0)
        pairs = [(rng.randrange(k.order), rng.randrange(k.order)) for _ in range(count)]
        return lambda: [k.mul(a, b) for a, b in pairs]
    return f"mul x{count} over F_{q}^{t}", build


def _determinants(q, t, size, count):
    def build(backend):
        k = make_extension(q, t, backend=backend).kernel
        rng = np.random.default_rng(1)
        mats = [rng.integers(0, k.order, size=(size, size)) for _ in range(count)]
        return lambda: [k.det(m) for m in mats]
    return f"det {size}x{size} x{count} over F_{q}^{t}", build


def _mdp_check(n, k, q):
    code = construct_code(n, k, q, verify=False)
    blocks = [code.G0, code.G1]

    def build(backend):
        F = make_extension(q, 2 * k, backend=backend)
        T = truncate(PolyMatrix(F, blocks), 1)
        return lambda: mdp_minor_check(T).ok
    return f"MDP minor test ({n},{k}) over F_{q}^{2 * k}", build


def _column_distance():
    code = construct_code(4, 1, 5, verify=False)
    blocks = [code.G0, code.G1]

    def build(backend):
        F = make_extension(5, 2, backend=backend)
        G = PolyMatrix(F, blocks)
        return lambda: column_distance_exact(G, 3, engine="message")
    return "column distance d_3 (4,1) message engine", build


WORKLOADS = [
    lambda: _scalar_mul(11, 6, 20000),
    lambda: _determinants(7, 6, 6, 300),
    lambda: _mdp_check(7, 3, 7),
    lambda: _column_distance(),
]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    ap.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    args = ap.parse_args(argv)
    if not HAVE_COMPILED:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    rows = []
    for make in WORKLOADS:
        name, build = make()
        t_py, r_py = _best_of(build("python"), args.repeat)
        t_c, r_c = _best_of(build("cython"), args.repeat)
        if r_py != r_c:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 3
        rows.append({"workload": name, "python_s": t_py, "cython_s": t_c, "speedup": t_py / t_c})

    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        w = max(len(r["workload"]) for r in rows)
        print(f"{'workload':<{w}}  {'python':>10}  {'cython':>10}  {'speedup':>8}")
        for r in rows:
            print(f"{r['workload']:<{w}}  {r['python_s']:>9.4f}s  {r['cython_s']:>9.4f}s  {r['speedup']:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
