"""Benchmark the compiled counting kernels against the pure-Python twins.

Both backends implement the same three entry points and must return
identical values; this script times them side by side on random inputs
and verifies agreement on every call.

Usage:
    python3 benchmarks/bench_kernels.py [--seed N] [--repeat N]
"""

import argparse
import random
import sys
import time

from regkit import _kernels_py as python_impl
from regkit import kernels


def _random_rows(rng, n_left, n_right, p):
    rows = []
    for _ in range(n_left):
        mask = 0
        for j in range(n_right):
            if rng.random() < p:
                mask |= 1 << j
        rows.append(mask)
    return rows


def _random_triangle_masks(rng, n, p_tri, p_edge):
    tm = []
    hm = []
    tau = 0
    ecount = 0
    for _ in range(n * n):
        t_mask = 0
        h_mask = 0
        for z in range(n):
            if rng.random() < p_tri:
                t_mask |= 1 << z
                if rng.random() < p_edge:
                    h_mask |= 1 << z
        tm.append(t_mask)
        hm.append(h_mask)
        tau += t_mask.bit_count()
        ecount += h_mask.bit_count()
    return tau, ecount, hm, tm


def _random_edges(rng, n_left, n_right, count):
    pool = [(a, b) for a in range(n_left) for b in range(n_right)]
    return sorted(rng.sample(pool, count))


def _time(func, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = func(*args)
        best = min(best, time.perf_counter() - start)
    return result, best


def _report(label, py_time, c_time):
    speedup = py_time / c_time if c_time > 0 else float("inf")
    print(f"{label:<38} python {py_time * 1e3:9.3f} ms   "
          f"compiled {c_time * 1e3:9.3f} ms   x{speedup:.1f}")


def bench_triangle_count(rng, repeat):
    for n in (16, 32, 64):
        ab = _random_rows(rng, n, n, 0.5)
        ac = _random_rows(rng, n, n, 0.5)
        bc = _random_rows(rng, n, n, 0.5)
        py, t_py = _time(python_impl.triangle_count, (ab, ac, bc), repeat)
        cc, t_c = _time(kernels.compiled_impl.triangle_count,
                        (ab, ac, bc), repeat)
        assert py == cc
        _report(f"triangle_count n={n}", t_py, t_c)


def bench_octahedron(rng, repeat):
    for n in (6, 10, 14):
        tau, ecount, hm, tm = _random_triangle_masks(rng, n, 0.6, 0.5)
        args = (n, tau, ecount, hm, tm)
        py, t_py = _time(python_impl.octahedron_fast_scaled, args, repeat)
        cc, t_c = _time(kernels.compiled_impl.octahedron_fast_scaled,
                        args, repeat)
        assert py == cc
        _report(f"octahedron_fast_scaled n={n}", t_py, t_c)


def bench_scan_subtriads(rng, repeat):
    n = 4
    for edges_per_side in (5, 6):
        ab = _random_edges(rng, n, n, edges_per_side)
        ac = _random_edges(rng, n, n, edges_per_side)
        bc = _random_edges(rng, n, n, edges_per_side)
        h_amask = [rng.getrandbits(n) for _ in range(n * n)]
        for mode in (0, 1):
            args = (ab, ac, bc, n, n, n, h_amask, mode, 1, 2)
            py, t_py = _time(python_impl.scan_subtriads, args, repeat)
            cc, t_c = _time(kernels.compiled_impl.scan_subtriads,
                            args, repeat)
            assert py == cc
            _report(f"scan_subtriads m={3 * edges_per_side} mode={mode}",
                    t_py, t_c)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeat", type=int, default=5,
                        help="repetitions per case; best time is reported")
    args = parser.parse_args(argv)
    if kernels.compiled_impl is None:
        print("compiled backend is not available; nothing to compare",
              file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    print(f"active backend: {kernels.BACKEND}")
    bench_triangle_count(rng, args.repeat)
    bench_octahedron(rng, args.repeat)
    bench_scan_subtriads(rng, args.repeat)
    return 0


if __name__ == "__main__":
    sys.exit(main())
