"""Benchmark the jit-compiled kernels against their pure-numpy twins.

Times each hot kernel on representative arrays, plus a small end-to-end
step loop through the public driver under each backend.  Run as

    python3 benchmarks/bench_kernels.py [--cells 4000] [--repeats 200]
"""

import argparse
import os
import statistics
import subprocess
import sys
import time

import numpy as np

from adaptfv.kernels import numpy_impl

try:
    from adaptfv.kernels import numba_impl
except ImportError:
    numba_impl = None


def make_inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    uniform = np.linspace(0.0, 1.0, n + 1)
    interior = np.sort(rng.uniform(0.0, 1.0, size=n - 1))
    x_old = uniform.copy()
    x_old[1:-1] = 0.5 * uniform[1:-1] + 0.5 * interior
    h = np.diff(x_old)
    cap = 0.4 * np.minimum(h[:-1], h[1:])
    x_new = x_old.copy()
    x_new[1:-1] += rng.uniform(-1.0, 1.0, size=n - 1) * cap
    u = rng.normal(size=n)
    w = 1.0 + rng.uniform(0.0, 5.0, size=n + 1)
    v = rng.normal(size=n + 1)
    vl, vr = v[:-1], v[1:]
    flux = rng.normal(size=n + 1)
    return {
        "monitor_weights": (x_old, u, 4.0),
        "smooth_weights": (w, 3),
        "equidistribute": (x_old, w),
        "cap_displacements": (x_old, x_new, 0.4),
        "remap_field": (x_old, x_new, u),
        "h_terms": (x_new - x_old, h, u),
        "interface_coeffs": (vl, vr, 0.5 * vl**2, 0.5 * vr**2, vl, vr,
                             vl**3 / 6.0, vr**3 / 6.0,
                             (vl * vl + vl * vr + vr * vr) / 6.0, 1, 0.0),
        "nonuniform_update": (u, h, flux, 1e-4),
        "combined_update": (u, v * 0.01, flux, 1e-4, 1.0 / n),
        "movement_bound_terms": (v, v, v * 0.1, np.abs(v), 1e-4, 1.0 / n, 1.0),
    }


def time_call(fn, args, repeats):
    fn(*args)  # warmup / jit compile
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def bench_kernels(n, repeats):
    inputs = make_inputs(n)
    print(f"\nper-kernel medians, n = {n} cells, {repeats} repeats")
    print(f"{'kernel':<24} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for name, args in inputs.items():
        t_np = time_call(getattr(numpy_impl, name), args, repeats)
        if numba_impl is None:
            print(f"{name:<24} {t_np * 1e6:>10.1f}us {'n/a':>12} {'':>9}")
            continue
        t_nb = time_call(getattr(numba_impl, name), args, repeats)
        print(f"{name:<24} {t_np * 1e6:>10.1f}us {t_nb * 1e6:>10.1f}us "
              f"{t_np / t_nb:>8.2f}x")


def bench_driver(n, steps):
    """End-to-end adapted Burgers steps under each backend (subprocesses,
    since the backend is fixed at import time)."""
    code = f"""
import time
import numpy as np
import adaptfv as a
mesh = a.Mesh1D.uniform(0.0, 1.0, {n})
u = a.CellField.physical(np.where(mesh.centers < 0.5, 1.0, 0.0))
state = a.initial_state(mesh, u)
p = a.burgers()
state, _ = a.adaptive_step(p, state, adapt_params=a.AdaptParams())  # warmup path
t0 = time.perf_counter()
for _ in range({steps}):
    state, _ = a.adaptive_step(p, state, adapt_params=a.AdaptParams(), scheme="rusanov")
print(a.BACKEND, time.perf_counter() - t0)
"""
    print(f"\nend-to-end: {steps} adapted steps, n = {n} cells")
    for disable in ("1", "0"):
        env = dict(os.environ, ADAPTFV_DISABLE_NUMBA=disable)
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True)
        if out.returncode != 0:
            print(f"  backend run failed: {out.stderr.strip()}")
            continue
        backend, wall = out.stdout.split()
        print(f"  {backend:<6} {float(wall):8.3f}s")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cells", type=int, default=4000)
    parser.add_argument("--repeats", type=int, default=200)
    parser.add_argument("--steps", type=int, default=300)
    args = parser.parse_args()
    if numba_impl is None:
        print("numba unavailable: timing the numpy backend only")
    bench_kernels(args.cells, args.repeats)
    bench_driver(args.cells, args.steps)


if __name__ == "__main__":
    main()
