#!/usr/bin/env python3
"""Benchmark the structure-constant census: numba kernels vs the numpy fallback.

Runs the exhaustive census at dim 3 (512 candidates) and dim 4 (2^24
candidates) under both backends, checks that every reported count agrees,
and prints per-backend wall times in integer milliseconds.

Usage:
    python benchmarks/bench_census.py [--dims 3,4] [--threads N] [--repeats R]

The numba path pays a one-off compilation cost; a warm-up run is timed
separately so the steady-state numbers are comparable.
"""
from __future__ import annotations

import argparse
import os
import time

from lie2.search import CensusSpec, census, census_backend


def run_once(dim: int, threads: int, backend: str) -> tuple[int, dict]:
    os.environ["LIE2_BACKEND"] = backend
    spec = CensusSpec(dim=dim, field_degree=1, sample_count=None, threads=threads)
    t0 = time.perf_counter()
    report = census(spec)
    ms = int((time.perf_counter() - t0) * 1000)
    return ms, report.to_json()


COMPARE_KEYS = ("candidates_scanned", "jacobi_pass", "simple_count",
                "restrictable_simple_count", "simple_iso_classes")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", default="3,4",
                    help="comma-separated dims to benchmark (default 3,4)")
    ap.add_argument("--threads", type=int, default=4)
    ap.add_argument("--repeats", type=int, default=3,
                    help="timed repeats per backend after warm-up")
    args = ap.parse_args()
    dims = [int(s) for s in args.dims.split(",") if s]

    try:
        os.environ["LIE2_BACKEND"] = "numba"
        census_backend()
        backends = ["numba", "numpy"]
    except Exception:
        print("numba unavailable; benchmarking the numpy path only")
        backends = ["numpy"]
    finally:
        os.environ["LIE2_BACKEND"] = "auto"

    for dim in dims:
        print(f"== exhaustive census, dim {dim}, threads {args.threads} ==")
        results = {}
        for backend in backends:
            warm_ms, counts = run_once(dim, args.threads, backend)
            times = []
            for _ in range(args.repeats):
                ms, again = run_once(dim, args.threads, backend)
                for key in COMPARE_KEYS:
                    if again[key] != counts[key]:
                        raise SystemExit(f"non-deterministic {key} on {backend}")
                times.append(ms)
            results[backend] = (warm_ms, min(times), counts)
            print(f"  {backend:6s}: warm-up {warm_ms} ms, "
                  f"best of {args.repeats}: {min(times)} ms")
        if len(backends) == 2:
            for key in COMPARE_KEYS:
                a = results["numba"][2][key]
                b = results["numpy"][2][key]
                if a != b:
                    raise SystemExit(f"backend disagreement on {key}: {a} != {b}")
            fast, slow = results["numba"][1], results["numpy"][1]
            if fast > 0:
                print(f"  speedup (numpy/numba best): {slow // max(fast, 1)}x"
                      f" ({slow} ms / {fast} ms)")
        counts = results[backends[0]][2]
        print(f"  counts: scanned {counts['candidates_scanned']}, "
              f"jacobi {counts['jacobi_pass']}, simple {counts['simple_count']}, "
              f"classes {len(counts['simple_iso_classes'])}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
