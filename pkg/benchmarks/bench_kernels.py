"""Timing comparison of the two kernel backends.

Runs the statevector forward pass and the full adjoint gradient on a grid of
(qubits, layers) sizes with both the NumPy kernels and, when built, the
compiled Cython kernels, and prints a speedup table.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --qubits 8 12 16 --min-time 0.5
"""

import argparse
import time

import numpy as np

import paulicut.backend
from paulicut import _kernels_py, simulator
from paulicut.circuits import build_brickwork
from paulicut.encoding import build_encoding, capacity
from paulicut.graphs import generate_random_instance
from paulicut.loss import make_loss_spec

try:
    from paulicut import _kernels_cy
except ImportError:
    _kernels_cy = None


def timeit(fn, min_time):
    """Average seconds per call, growing the repeat count until min_time."""
    fn()  # warm up
    reps = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(reps):
            fn()
        dt = time.perf_counter() - t0
        if dt >= min_time:
            return dt / reps
        reps = max(2 * reps, int(reps * min_time / max(dt, 1e-9)) + 1)


def bench_point(n, layers, min_time, seed=0):
    circ = build_brickwork(n, layers)
    table = circ.table()
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=circ.num_params)

    k = 2 if n >= 2 else 1
    m = min(capacity(n, k), 3 * n)
    g = generate_random_instance(m, min(4.0, m - 1.0), seed=seed)
    enc = build_encoding(n, k, m)
    spec = make_loss_spec(g, enc)

    backends = [("numpy", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("cython", _kernels_cy))

    row = {"n": n, "layers": layers, "params": circ.num_params}
    saved = paulicut.backend.kernels
    try:
        for name, mod in backends:
            def forward():
                psi = mod.zero_state(n)
                mod.run_table(psi, table, theta)

            paulicut.backend.kernels = mod  # simulator resolves this lazily
            def gradient():
                simulator.loss_and_gradient(circ, theta, spec)

            row[f"fwd_{name}"] = timeit(forward, min_time)
            row[f"grad_{name}"] = timeit(gradient, min_time)
    finally:
        paulicut.backend.kernels = saved
    return row


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qubits", type=int, nargs="+", default=[6, 10, 14])
    ap.add_argument("--layers", type=int, default=0,
                    help="brickwork layers (default: same as qubit count)")
    ap.add_argument("--min-time", type=float, default=0.2,
                    help="minimum wall time per measurement, seconds")
    args = ap.parse_args(argv)

    if _kernels_cy is None:
        print("compiled backend not built; timing the NumPy kernels only\n")

    header = f"{'n':>3} {'layers':>6} {'params':>7}"
    for what in ("forward", "gradient"):
        header += f" | {what + ' numpy':>15}"
        if _kernels_cy is not None:
            header += f" {what + ' cython':>16} {'speedup':>8}"
    print(header)
    print("-" * len(header))

    for n in args.qubits:
        layers = args.layers or n
        row = bench_point(n, layers, args.min_time)
        line = f"{row['n']:>3} {row['layers']:>6} {row['params']:>7}"
        for what in ("fwd", "grad"):
            line += f" | {row[f'{what}_numpy'] * 1e3:>12.3f} ms"
            if _kernels_cy is not None:
                ratio = row[f"{what}_numpy"] / row[f"{what}_cython"]
                line += f" {row[f'{what}_cython'] * 1e3:>13.3f} ms {ratio:>7.2f}x"
        print(line)


if __name__ == "__main__":
    main()
