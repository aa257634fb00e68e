"""Compare the compiled and pure-Python simulation kernels.

Usage: python benchmarks/bench_kernels.py [--iters 1000] [--repeat 3] [--threads 1]
"""

import argparse
import time

from pearson_bf import _backend
from pearson_bf.sim import SimConfig, run_grid


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--iters", type=int, default=1000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=2021)
    args = parser.parse_args()

    config = SimConfig(seed=args.seed, iterations=args.iters)
    kernels = [("python", _backend.pure)]
    if _backend.compiled is not None:
        kernels.insert(0, ("cython", _backend.compiled))
    else:
        print("compiled kernel not built; timing the pure kernel only")

    results = {}
    for name, kernel in kernels:
        # the pure kernel holds the GIL, so one pass is plenty
        repeat = args.repeat if name == "cython" else 1
        elapsed, rows = best_of(repeat, lambda: run_grid(config, threads=args.threads,
                                                         kernel=kernel))
        results[name] = (elapsed, rows)
        cells = len(rows) // len(config.methods)
        print(f"{name:<7} {elapsed:8.3f} s  {cells} cells x {args.iters} iterations")

    if len(results) == 2:
        (tc, rc), (tp, rp) = results["cython"], results["python"]
        same = [r.mean_percent_error.hex() for r in rc] == [r.mean_percent_error.hex() for r in rp]
        print(f"speedup {tp / tc:8.1f}x  identical output: {same}")


if __name__ == "__main__":
    main()
