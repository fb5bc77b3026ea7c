"""Time the numba and numpy paths of the staircase kernels, then a full job.

    python benchmarks/bench_kernels.py
    WEIERSTRASS_LAB_PURE_NUMPY=1 python benchmarks/bench_kernels.py   # numpy only
"""

import argparse
import time
from pathlib import Path

import numpy as np

from weierstrass_lab import _accel
from weierstrass_lab.jobs import load_job
from weierstrass_lab.report import run_job


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def random_staircases(rng, count, nvars, bound):
    out = []
    for _ in range(count):
        pure = np.diag(rng.integers(2, bound, size=nvars))
        mixed = rng.integers(0, bound, size=(rng.integers(1, 6), nvars))
        out.append(np.vstack([pure, mixed]).astype(np.int64))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--count", type=int, default=200)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    cases = random_staircases(rng, args.count, 3, 12)
    monos = rng.integers(0, 12, size=(20000, 3)).astype(np.int64)
    lead = cases[0]

    paths = [("numpy", False)] + ([("numba", True)] if _accel.HAVE_NUMBA else [])
    print(f"numba available: {_accel.HAVE_NUMBA}")
    for label, jit in paths:
        # warm-up triggers compilation on the jit path
        count = lambda: [_accel.count_standard_monomials(c, use_jit=jit) for c in cases]  # noqa: E731
        count()
        mask = lambda: _accel.divisible_mask(lead, monos, use_jit=jit)  # noqa: E731
        mask()
        print(f"{label:6s} count_standard_monomials x{args.count}: {best_of(count, args.repeat) * 1e3:8.2f} ms")
        print(f"{label:6s} divisible_mask 20000 rows:       {best_of(mask, args.repeat) * 1e3:8.2f} ms")

    job = Path(__file__).resolve().parent.parent / "jobs" / "nodal_cubic.job"
    spec = load_job(job)
    print(f"end-to-end nodal_cubic.job: {best_of(lambda: run_job(spec), 1):.2f} s")


if __name__ == "__main__":
    main()
