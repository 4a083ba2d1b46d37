#!/usr/bin/env python3
"""Compare the JIT-compiled counting kernels against the numpy fallback.

Runs identical workloads through both backends, asserts the results are
identical, and reports wall times plus the speedup ratio:

    python3 benchmarks/bench_counting.py
    python3 benchmarks/bench_counting.py --repeat 5 --heavy

The same selection is available at runtime through the ARITHDYN_BACKEND
environment flag (auto / numba / numpy); this script bypasses the flag by
passing the backend explicitly.
"""
import argparse
import time

from arithdyn.counting.api import (HyperellipticCurve, count_points,
                                   hyperelliptic_count, load_variety)
from arithdyn.counting.backend import available_backends
from arithdyn.fixtures import fixture_path

CASES = [
    ("projective plane / F_3, n=6", "p2_f3.json", 6),
    ("plane cubic / F_3, n=6", "ec_f3.json", 6),
    ("plane cubic / F_5, n=5", "ec_f5.json", 5),
    ("genus-2 scan / F_3, n=12", "hyp2_f3.json", 12),
]
HEAVY_CASES = [
    ("plane cubic / F_3, n=8", "ec_f3.json", 8),
    ("curve scan / F_7, n=8", "ec_f7_hyp.json", 8),
]


def run_case(variety, n, backend):
    if isinstance(variety, HyperellipticCurve):
        return hyperelliptic_count(variety, n, backend=backend)
    return count_points(variety, n, backend=backend)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="timed repetitions per case (best is reported)")
    ap.add_argument("--heavy", action="store_true",
                    help="add the larger workloads")
    args = ap.parse_args()

    backends = available_backends()
    print(f"available backends: {', '.join(backends)}")
    if "numba" not in backends:
        print("numba not importable; timing the numpy fallback only")

    cases = CASES + (HEAVY_CASES if args.heavy else [])
    header = f"{'case':<30} {'n':>3} {'count':>12}"
    for b in backends:
        header += f" {b + ' [s]':>12}"
    if len(backends) == 2:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))

    for label, name, n in cases:
        variety = load_variety(str(fixture_path(name)))
        results = {}
        times = {}
        for backend in backends:
            run_case(variety, 1, backend)  # warm-up: table + JIT compile
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[backend] = run_case(variety, n, backend)
                best = min(best, time.perf_counter() - t0)
            times[backend] = best
        counts = set(results.values())
        assert len(counts) == 1, f"backend mismatch on {label}: {results}"
        row = f"{label:<30} {n:>3} {counts.pop():>12}"
        for b in backends:
            row += f" {times[b]:>12.4f}"
        if len(backends) == 2:
            row += f" {times[backends[1]] / times[backends[0]]:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
