"""Benchmark the numba-compiled kernels against the pure-numpy path.

Two views:
  * kernel-level: Thomas solve and tridiagonal matvec at several sizes,
    both backends in-process;
  * run-level: the constant-coefficient benchmark simulation end to end in
    a subprocess, selecting the backend with THERMISTOR_FEM_NUMBA.

Usage: python benchmarks/bench_kernels.py [--repeats 5]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from thermistor_fem import _kernels

RUN_SNIPPET = """
import time
import thermistor_fem as tf

config = tf.SimulationConfig(
    n_elements=100, tau=0.1, beta=0.2,
    model=tf.ModelSpec("paper_example", {"gamma": 0.1}),
    flux_left=1.0, flux_right=1.0, t_max=200.0,
    steady_tolerance=1e-10, record_every=10)
tf.run_reduced(config)  # warm-up (includes any jit compilation)
t0 = time.perf_counter()
result = tf.run_reduced(config)
reduced = time.perf_counter() - t0
t0 = time.perf_counter()
result = tf.run(config)
coupled = time.perf_counter() - t0
print(f"{tf.ACTIVE_BACKEND},{reduced:.4f},{coupled:.4f}")
"""


def time_kernel(fn, args, repeats: int) -> float:
    fn(*args)  # warm-up / compile
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def dominant_system(size: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    sub = rng.uniform(-1, 1, size - 1)
    sup = rng.uniform(-1, 1, size - 1)
    main = np.empty(size)
    for i in range(size):
        row = (abs(sub[i - 1]) if i > 0 else 0.0) + (abs(sup[i]) if i < size - 1 else 0.0)
        main[i] = row + 1.0
    rhs = rng.uniform(-5, 5, size)
    return sub, main, sup, rhs


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    impls = _kernels.backends()
    print(f"available backends: {', '.join(impls)}")
    print()
    print("kernel-level (best of repeats, seconds)")
    print(f"{'kernel':<16}{'size':>9}" + "".join(f"{n:>12}" for n in impls))
    for size in (100, 1_000, 100_000):
        system = dominant_system(size)
        row = f"{'thomas_solve':<16}{size:>9}"
        for name in impls:
            thomas, _ = impls[name]
            row += f"{time_kernel(thomas, system, args.repeats):>12.2e}"
        print(row)
    for size in (100, 1_000, 100_000):
        sub, mn, sup, rhs = dominant_system(size)
        x = np.linspace(0, 1, size)
        row = f"{'tridiag_matvec':<16}{size:>9}"
        for name in impls:
            _, matvec = impls[name]
            row += f"{time_kernel(matvec, (sub, mn, sup, x), args.repeats):>12.2e}"
        print(row)

    print()
    print("run-level (one benchmark simulation, seconds)")
    print(f"{'backend':<10}{'run_reduced':>14}{'run_coupled':>14}")
    for flag in ("1", "0"):
        env = dict(os.environ, THERMISTOR_FEM_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", RUN_SNIPPET],
                             capture_output=True, text=True, env=env)
        if out.returncode != 0:
            sys.stderr.write(out.stderr)
            raise SystemExit(1)
        backend, reduced, coupled = out.stdout.strip().split(",")
        print(f"{backend:<10}{float(reduced):>14.4f}{float(coupled):>14.4f}")


if __name__ == "__main__":
    main()
