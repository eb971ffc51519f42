#!/usr/bin/env python3
"""Performance benchmarks for the horolab kernel.

Run with: python benchmarks/benchmark_core.py
"""

from __future__ import annotations

import time
from dataclasses import replace

import numpy as np

from horolab.core.config import RunConfig, SampleCounts
from horolab.experiments.suites import run_suite
from horolab.filling.whitney import HorosphereSphere, whitney_fill
from horolab.horosphere.context import HorosphereContext
from horolab.horosphere.retraction import retract_to_Z
from horolab.liecore.groups import iwasawa_nak, random_special_linear
from horolab.symspace.points import distance, random_point


def benchmark(name: str, iterations: int = 1000):
    """Decorator to benchmark a function."""

    def decorator(func):
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            for _ in range(iterations):
                result = func(*args, **kwargs)
            elapsed = time.perf_counter() - start
            avg = elapsed / iterations * 1000  # ms
            print(f"{name}: {avg:.4f} ms/op ({iterations} iterations)")
            return result

        return wrapper

    return decorator


RNG = np.random.default_rng(0)
CONFIG = RunConfig(n=3, seed=7)
CONTEXT = HorosphereContext.from_run(CONFIG)


@benchmark("iwasawa_nak (n=3)")
def bench_iwasawa():
    """Benchmark one Iwasawa factorization."""
    return iwasawa_nak(random_special_linear(RNG, 3))


@benchmark("distance (n=4)")
def bench_distance():
    """Benchmark the symmetric space distance."""
    return distance(random_point(RNG, 4), random_point(RNG, 4))


@benchmark("retract_to_Z (n=3)")
def bench_retract():
    """Benchmark the retraction onto the horosphere."""
    return retract_to_Z(random_point(RNG, 3, 2.0), CONTEXT)


@benchmark("verify iwasawa suite", iterations=5)
def bench_iwasawa_suite():
    """Benchmark the iwasawa suite at its default sample count."""
    return run_suite(CONFIG, "iwasawa")


@benchmark("verify busemann suite (100 samples)", iterations=3)
def bench_busemann_suite():
    """Benchmark the busemann suite."""
    config = replace(CONFIG, samples=SampleCounts(busemann=100, lipschitz_pairs=1000))
    return run_suite(config, "busemann")


@benchmark("whitney_fill of a 0-sphere (n=3)", iterations=1)
def bench_fill_pair():
    """Benchmark filling two points of Z by a path."""
    rng = np.random.default_rng(3)
    points = tuple(retract_to_Z(random_point(rng, 3, 2.0), CONTEXT) for _ in range(2))
    alpha = HorosphereSphere(0, points, CONTEXT)
    return whitney_fill(alpha, CONFIG.calibration, CONFIG.grid, seed=3, checks=16)


def main():
    """Run all benchmarks."""
    print("=" * 60)
    print("horolab Performance Benchmarks")
    print("=" * 60)
    print()

    print("Kernel Benchmarks:")
    print("-" * 40)
    bench_iwasawa()
    bench_distance()
    bench_retract()
    print()

    print("Suite Benchmarks:")
    print("-" * 40)
    bench_iwasawa_suite()
    bench_busemann_suite()
    print()

    print("Filling Benchmarks:")
    print("-" * 40)
    bench_fill_pair()
    print()

    print("=" * 60)
    print("Benchmarks complete!")


if __name__ == "__main__":
    main()
