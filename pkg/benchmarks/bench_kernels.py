"""Benchmark: compiled Cython kernels vs the pure NumPy fallback.

Times the two Monte Carlo hot kernels (inverse-CDF transform, per-sample
summary extraction) and an end-to-end RMSE chunk on both backends, and
verifies they agree numerically.

Usage: python benchmarks/bench_kernels.py [--rows 20000]
"""

import argparse
import time

import numpy as np

from fivenum._kernels import available_backends, pure
from fivenum.streams import open_uniforms, stream_rng

try:
    from fivenum import _fast
except ImportError:
    _fast = None


def timeit(fn, *args, repeats=5):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_case(rows: int, n: int) -> None:
    q = (n - 1) // 4
    rng = stream_rng(0, "bench", n)
    u = open_uniforms(rng, (rows, n))
    total = rows * n

    t_pure_q, z_pure = timeit(pure.quantile_transform, u)
    line = (f"n={n:4d}  transform: pure {t_pure_q * 1e9 / total:7.1f} ns/val")
    if _fast is not None:
        t_fast_q, z_fast = timeit(_fast.quantile_transform, u)
        np.testing.assert_allclose(z_fast, z_pure, rtol=1e-12, atol=1e-13)
        line += (f"  compiled {t_fast_q * 1e9 / total:7.1f} ns/val"
                 f"  speedup {t_pure_q / t_fast_q:5.2f}x")
    print(line, flush=True)

    t_pure_s, s_pure = timeit(pure.block_summaries, z_pure, q)
    line = (f"        summaries: pure {t_pure_s * 1e9 / total:7.1f} ns/val")
    if _fast is not None:
        t_fast_s, s_fast = timeit(_fast.block_summaries, z_pure, q)
        np.testing.assert_array_equal(s_fast[:, :5], s_pure[:, :5])
        np.testing.assert_allclose(s_fast[:, 5], s_pure[:, 5], rtol=1e-12)
        line += (f"  compiled {t_fast_s * 1e9 / total:7.1f} ns/val"
                 f"  speedup {t_pure_s / t_fast_s:5.2f}x")
    print(line, flush=True)


def bench_end_to_end(rows: int) -> None:
    import os
    import subprocess
    import sys

    print("\nend-to-end RMSE study (n=85, T=%d):" % (rows * 5), flush=True)
    code = (
        "import time; "
        "from fivenum.simulator import SimulationConfig, DistributionSpec, "
        "run_rmse_study; "
        "from fivenum._kernels import backend_name; "
        "cfg = SimulationConfig(dist=DistributionSpec.normal(50, 17), "
        f"n_grid=(85,), replications={rows * 5}, seed=3); "
        "t0 = time.perf_counter(); r = run_rmse_study(cfg); "
        "print(f'  {backend_name():8s} "
        "{time.perf_counter() - t0:6.2f}s  "
        "rmse(sopt)={r.rmse[(85, \"sopt\")]:.6f}')"
    )
    for backend in available_backends():
        env = dict(os.environ, FIVENUM_BACKEND=backend)
        subprocess.run([sys.executable, "-c", code], env=env, check=True)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--rows", type=int, default=20_000)
    args = parser.parse_args()
    print(f"backends available: {available_backends()}", flush=True)
    if _fast is None:
        print("compiled kernels missing; timing the pure backend only")
    for n in (5, 85, 401, 801):
        bench_case(args.rows, n)
    bench_end_to_end(args.rows)


if __name__ == "__main__":
    main()
