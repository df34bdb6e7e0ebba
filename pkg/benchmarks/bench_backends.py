"""Time the numba and numpy kernels against each other.

    python benchmarks/bench_backends.py --sizes 64,128,256 --repeat 3

Prints one CSV row per (size, method, backend) with the best wall time and
the max deviation from the numba result.
"""

import argparse
import time

import numpy as np

from nlclip.filters import Anchor, FilterParams, available_backends, default_h, denoise
from nlclip.noise import NoiseSpec, add_speckle, generate_checker


def best_time(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="64,128,256")
    parser.add_argument("--variance", type=float, default=0.08)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--s", type=int, default=10)
    parser.add_argument("--r", type=int, default=3)
    args = parser.parse_args(argv)

    backends = available_backends()
    if "numba" in backends:
        # compile outside the timed region
        denoise(generate_checker(8, 8, 2), FilterParams(h=0.1, anchor=Anchor.MEDIAN), "numba")

    print("size,method,backend,best_s,speedup_vs_numpy,max_abs_diff")
    for size in (int(t) for t in args.sizes.split(",")):
        noisy = add_speckle(generate_checker(size, size, max(size // 8, 1)),
                            NoiseSpec(args.variance, seed=1))
        for anchor in Anchor:
            params = FilterParams(h=default_h(args.variance), s=args.s, r=args.r, anchor=anchor)
            timings, outputs = {}, {}
            for backend in backends:
                timings[backend], out = best_time(lambda: denoise(noisy, params, backend), args.repeat)
                outputs[backend] = out.data
            base = outputs[backends[0]]
            for backend in backends:
                speedup = timings["numpy"] / timings[backend]
                diff = float(np.abs(outputs[backend] - base).max())
                print(f"{size},{anchor.method},{backend},{timings[backend]:.4f},{speedup:.1f},{diff:.1e}")


if __name__ == "__main__":
    main()
