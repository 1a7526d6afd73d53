"""Benchmark the series kernels: numba against the pure-numpy fallback.

Builds the generator factor lists for some realistic free-algebra series and
times the full shift-and-add product under both backends, checking that the
resulting tables agree.  Run directly::

    python3 benchmarks/bench_series.py
"""

import time

import numpy as np

from dlcalc.kernels import get_backend
from dlcalc.series import default_degree_cap, enumerate_generators

WORKLOADS = [
    ("p=2 free E_4, t=1, W=256", 2, 4, 1, 256, None),
    ("p=3 free E_inf, t=0, W=243", 3, None, 0, 243, None),
    ("p=5 free E_inf, t=0, W=125", 5, None, 0, 125, None),
]


def build_factors(p, k, t, weight_bound, d_max):
    if k is None and d_max is None:
        d_max = default_degree_cap(weight_bound)
    gens = enumerate_generators(p, k, t, weight_bound, d_max)
    if d_max is None:
        d_max = max((weight_bound // g.weight) * g.degree for g in gens)
    factors = [(g.weight, g.degree, g.is_odd) for g in gens]
    return factors, d_max


def run_product(kernel, factors, weight_bound, d_max):
    table = np.zeros((weight_bound + 1, d_max + 1), dtype=np.int64)
    table[0, 0] = 1
    for w0, d0, odd in factors:
        if w0 > weight_bound:
            continue
        if odd:
            table = kernel["exterior"](table, w0, d0)
        else:
            kernel["geometric_inplace"](table, w0, d0)
    return table


def bench(kernel, factors, weight_bound, d_max, repeats=5):
    best = float("inf")
    table = None
    for _ in range(repeats):
        start = time.perf_counter()
        table = run_product(kernel, factors, weight_bound, d_max)
        best = min(best, time.perf_counter() - start)
    return best, table


def main():
    backends = {name: get_backend(name) for name in ("numpy", "numba")}
    # trigger jit compilation outside the timed region
    warm = np.zeros((4, 4), dtype=np.int64)
    warm[0, 0] = 1
    backends["numba"]["geometric_inplace"](warm, 1, 1)
    backends["numba"]["exterior"](warm, 1, 1)

    print(f"{'workload':40s} {'factors':>8s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for name, p, k, t, W, d_max in WORKLOADS:
        factors, top = build_factors(p, k, t, W, d_max)
        times = {}
        tables = {}
        for backend_name, kernel in backends.items():
            times[backend_name], tables[backend_name] = bench(kernel, factors, W, top)
        assert np.array_equal(tables["numpy"], tables["numba"]), name
        ratio = times["numpy"] / times["numba"]
        print(f"{name:40s} {len(factors):8d} {times['numpy']*1e3:9.2f}ms "
              f"{times['numba']*1e3:9.2f}ms {ratio:7.2f}x")


if __name__ == "__main__":
    main()
