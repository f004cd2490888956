"""Compare the compiled and numpy kernels on the fast wavelet transform and the sine sum.

    python3 benchmarks/bench_kernels.py [--threads N] [--repeat R]
"""
import argparse
import time

import numpy as np

from radialmra import _kernels
from radialmra.filters import shannon_filter


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.compiled is None:
        print("compiled extension not built; only the numpy kernels are available")
    _kernels.set_threads(args.threads)
    rng = np.random.default_rng(0)
    g = shannon_filter(64).g

    cases = []
    for K in (256, 4096, 32768):
        c = rng.normal(size=K) + 1j * rng.normal(size=K)
        n_out = (K + g.size) // 2
        cases.append((f"qr_decompose K={K}", lambda m, c=c, n=n_out: m.qr_decompose(g, c, n)))
        a = rng.normal(size=n_out) + 1j * rng.normal(size=n_out)
        d = rng.normal(size=n_out) + 1j * rng.normal(size=n_out)
        cases.append((f"qr_reconstruct K={K}", lambda m, a=a, d=d, K=K: m.qr_reconstruct(g, a, d, K)))
    for n in (1024, 4096):
        lam = np.linspace(0.0, 50.0, n)
        r = (np.arange(n) + 0.5) * 40.0 / n
        f = np.exp(-r * r / 2)
        cases.append((f"sine_sum {n}x{n}", lambda m, lam=lam, r=r, f=f: m.sine_sum(lam, r, f)))

    print(f"{'kernel':28s} {'numpy [s]':>11s} {'compiled [s]':>13s} {'speedup':>8s}")
    for name, fn in cases:
        tp = best_of(lambda: fn(_kernels.python), args.repeat)
        if _kernels.compiled is not None:
            tc = best_of(lambda: fn(_kernels.compiled), args.repeat)
            print(f"{name:28s} {tp:11.5f} {tc:13.5f} {tp / tc:8.1f}")
        else:
            print(f"{name:28s} {tp:11.5f} {'-':>13s} {'-':>8s}")


if __name__ == "__main__":
    main()
