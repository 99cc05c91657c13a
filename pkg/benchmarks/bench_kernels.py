"""Time the brute-force kernels on both backends.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Numba timings exclude JIT compilation, since each kernel runs once before
timing. Both backends must return identical arrays.
"""
import argparse
import time

import numpy as np

from hopfdual import kernels
from hopfdual.ore import artifact_band_start, nabla_matrix

CASES = [
    ("kernel below band (3,2,8)", "kernel", (3, 2, 8)),
    ("kernel below band (5,2,8)", "kernel", (5, 2, 8)),
    ("full kernel (3,1,10)", "full", (3, 1, 10)),
    ("full kernel (3,2,6)", "full", (3, 2, 6)),
    ("pairing table [4,12,24]", "pairing", [4, 12, 24]),
]


def inputs(kind, arg):
    if kind == "pairing":
        return arg, None
    p, k, N = arg
    M = np.asarray(nabla_matrix(p, k, N), dtype=np.int64) % p ** k
    if kind == "kernel":
        M = np.ascontiguousarray(M[:, :artifact_band_start(p, N)])
    return M, p ** k


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def run_case(kind, arg, repeat):
    M, m = inputs(kind, arg)
    if kind == "pairing":
        grid, _ = kernels._mixed_radix(M)
        inv = np.asarray(M, dtype=np.int64)
        e = int(np.lcm.reduce(inv))
        slow = lambda: kernels._pairing_numpy(M)
        fast = (lambda: kernels._pairing_numba(grid, (e // inv).astype(np.int64), e)) if kernels.USE_NUMBA else None
    else:
        slow = lambda: kernels._kernel_numpy(M, m)
        fast = (lambda: kernels._kernel_numba(M, m)) if kernels.USE_NUMBA else None
    t_np, out_np = best_of(slow, repeat)
    if fast is None:
        return t_np, None, out_np.shape
    fast()  # compile
    t_nb, out_nb = best_of(fast, repeat)
    if not np.array_equal(out_np, out_nb):
        raise SystemExit(f"backends disagree on {kind} {arg}")
    return t_np, t_nb, out_np.shape


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"backend available: {kernels.backend()}")
    print(f"{'case':28s} {'shape':>12s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for name, kind, arg in CASES:
        t_np, t_nb, shape = run_case(kind, arg, args.repeat)
        nb = f"{t_nb:10.4f}" if t_nb is not None else f"{'-':>10s}"
        sp = f"{t_np / t_nb:8.1f}" if t_nb else f"{'-':>8s}"
        print(f"{name:28s} {str(shape):>12s} {t_np:10.4f} {nb} {sp}")


if __name__ == "__main__":
    main()
