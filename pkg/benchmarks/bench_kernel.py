"""Compares the compiled and pure-Python term-expansion kernels.

Two views: raw mul_dicts/add_dicts throughput on synthetic polynomials, and
an end-to-end transgression verification run in a subprocess per backend
(JETVAR_KERNEL=cython vs JETVAR_KERNEL=python).

Run from the repo root:  python3 benchmarks/bench_kernel.py
"""

import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from jetvar import _kernel_py

try:
    from jetvar import _kernel
except ImportError:
    _kernel = None

CAP = 10 ** 8


def synthetic_poly(rng, nvars, nterms, max_exp=2):
    terms = {}
    while len(terms) < nterms:
        mono = tuple(sorted(
            ((1, rng.randrange(nvars), rng.randrange(3), 0),
             rng.randint(1, max_exp))
            for _ in range(rng.randint(1, 4))))
        # drop monomials with a repeated indeterminate; mono_mul expects none
        if len({v for v, _ in mono}) != len(mono):
            continue
        terms[mono] = Fraction(rng.randint(1, 9), rng.randint(1, 4))
    return terms


def time_backend(mod, a, b, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        out = mod.mul_dicts(a, b, CAP)
        mod.add_dicts(out, a, CAP)
    return time.perf_counter() - t0, len(out)


def raw_bench():
    rng = random.Random(0)
    print(f"{'terms a x b':>14} {'python':>10} {'cython':>10} {'speedup':>8}")
    for na, nb, reps in [(20, 20, 200), (100, 100, 20), (400, 400, 2)]:
        a = synthetic_poly(rng, 8, na)
        b = synthetic_poly(rng, 8, nb)
        tp, szp = time_backend(_kernel_py, a, b, reps)
        if _kernel is None:
            print(f"{na:>6} x {nb:<5} {tp/reps*1e3:>9.2f}ms   (no compiled kernel)")
            continue
        tc, szc = time_backend(_kernel, a, b, reps)
        assert szp == szc, "backends disagree on the product size"
        print(f"{na:>6} x {nb:<5} {tp/reps*1e3:>9.2f}ms {tc/reps*1e3:>9.2f}ms "
              f"{tp/tc:>7.2f}x")


def end_to_end():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    cfg = os.path.join(root, "configs", "su2_k2.json")
    for backend in ("python", "cython"):
        env = dict(os.environ, JETVAR_KERNEL=backend)
        t0 = time.perf_counter()
        r = subprocess.run(
            [sys.executable, "-m", "jetvar.cli", "verify-conservation",
             "--config", cfg],
            env=env, capture_output=True, text=True)
        dt = time.perf_counter() - t0
        status = "ok" if r.returncode == 0 else f"exit {r.returncode}"
        print(f"verify-conservation su2 k=2 [{backend:>6}]: {dt:.2f}s ({status})")


if __name__ == "__main__":
    print("raw kernel throughput (mul_dicts + add_dicts):")
    raw_bench()
    print()
    print("end-to-end (subprocess per backend):")
    end_to_end()
